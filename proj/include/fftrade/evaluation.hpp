/// @file evaluation.hpp
/// @brief Blinded rating capture and evaluation metrics: good-trade
/// accuracy, rating distribution, Cohen's kappa and cross-mode uniqueness.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fftrade/domain.hpp"

namespace fftrade {

inline constexpr double kGoodTradeThreshold = 4.0;

enum class TradeSide : std::uint8_t { A, B };

struct TradeRating {
    std::string fingerprint;
    std::string rater_id;
    TradeSide side = TradeSide::A;
    int rating = 1;  // 1..10
    std::string blinded_mode_label;  // "A", "B" or "C"; may be empty

    void validate() const;
};

double overall_rating(int side_a, int side_b);

/// Both sides rated by one rater; later submissions replace earlier ones.
struct CompletedRating {
    std::string fingerprint;
    std::string rater_id;
    std::string blinded_mode_label;
    double overall = 0.0;
};

std::vector<CompletedRating> completed_ratings(std::span<const TradeRating> ratings);

/// Share of overall ratings >= 4; nullopt when there are none.
std::optional<double> good_trade_accuracy(std::span<const double> overall);

/// Percentages for bins 1..10 (index 0 is rating 1). Half-point overall
/// ratings fall into the bin below, keeping bins aligned with the
/// good-trade threshold.
std::array<double, 10> rating_distribution(std::span<const double> overall);

/// Two-rater Cohen's kappa over binarized (good/bad) judgements.
double cohen_kappa(std::span<const bool> rater_x, std::span<const bool> rater_y);

struct KappaPair {
    std::string rater_x;
    std::string rater_y;
    std::size_t shared = 0;
    double kappa = 0.0;
};

/// Kappa for every rater pair sharing at least one completed trade.
std::vector<KappaPair> pairwise_kappa(std::span<const CompletedRating> completed);

/// Share of trade instances (deduplicated within each mode) whose
/// fingerprint appears in exactly one mode.
double uniqueness(const std::map<std::string, std::vector<std::string>>& trades_by_mode);

/// Per-session random assignment of blinded labels A/B/C to compute modes.
std::map<std::string, ComputeMode> make_blinding(std::uint64_t session_seed);

/// Append-only JSON-lines rating log; writes are serialized. An empty path
/// keeps ratings in memory only.
class RatingStore {
public:
    explicit RatingStore(std::filesystem::path path);

    void append(const TradeRating& rating);
    std::vector<TradeRating> snapshot() const;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::vector<TradeRating> ratings_;
};

std::vector<TradeRating> load_ratings(const std::filesystem::path& path);

}  // namespace fftrade
