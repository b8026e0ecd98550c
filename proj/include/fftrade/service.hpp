/// @file service.hpp
/// @brief Trade service over an immutable, atomically swapped sheet snapshot,
/// plus its HTTP binding.

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fftrade/domain.hpp"
#include "fftrade/evaluation.hpp"
#include "fftrade/sheet.hpp"
#include "fftrade/trade_engine.hpp"

namespace httplib {
class Server;
}

namespace fftrade {

struct Snapshot {
    std::map<ComputeMode, ValuationSheet> sheets;
    std::uint64_t version = 0;
};

/// Readers take a shared_ptr to the current snapshot and keep it alive for
/// the whole request; replace() publishes a new one in a single swap.
class SnapshotCache {
public:
    std::shared_ptr<const Snapshot> current() const;
    void replace(std::vector<ValuationSheet> sheets);

private:
    mutable std::mutex mutex_;
    std::shared_ptr<const Snapshot> snapshot_ = std::make_shared<const Snapshot>();
};

struct Response {
    int status = 200;
    std::string body;  // JSON
};

struct ServiceOptions {
    EngineConfig engine;
    std::optional<std::filesystem::path> sheets_dir;  // source for reload()
    std::filesystem::path ratings_log;                // empty keeps ratings in memory
    std::optional<League> default_league;             // used when a request omits "league"
    Execution exec = Execution::parallel;
};

class TradeService {
public:
    explicit TradeService(ServiceOptions options, std::vector<ValuationSheet> sheets = {});

    /// POST /v1/trades {league, requesting_team, personalization, compute_modes[], max_results}
    Response post_trades(const std::string& body) const;
    /// GET /v1/valuations?mode=
    Response get_valuations(const std::string& mode) const;
    /// POST /v1/ratings {fingerprint, side, rating, rater_id[, blinded_mode_label]}
    Response post_ratings(const std::string& body);
    /// GET /v1/reports/evaluation
    Response get_evaluation() const;

    /// Re-reads the sheets directory; the old snapshot stays live on failure.
    void reload();
    void replace_sheets(std::vector<ValuationSheet> sheets) { cache_.replace(std::move(sheets)); }
    const SnapshotCache& cache() const { return cache_; }

private:
    ServiceOptions options_;
    SnapshotCache cache_;
    RatingStore ratings_;
};

/// Calls `tick` every `interval` on a background thread until destroyed.
class RefreshTimer {
public:
    RefreshTimer(std::chrono::milliseconds interval, std::function<void()> tick);
    ~RefreshTimer();
    RefreshTimer(const RefreshTimer&) = delete;
    RefreshTimer& operator=(const RefreshTimer&) = delete;

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    bool stopping_ = false;
    std::thread thread_;
};

class HttpServer {
public:
    explicit HttpServer(TradeService& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds to `port` (0 picks a free one) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void listen();
    /// listen() on a background thread; returns once the server accepts.
    void start();
    void stop();

private:
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

}  // namespace fftrade
