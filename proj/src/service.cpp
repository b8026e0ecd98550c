#include "fftrade/service.hpp"

#include <set>
#include <stdexcept>

#include "httplib.h"

#include "fftrade/io.hpp"

namespace fftrade {

namespace {

Response json_response(int status, const Json& body) { return {status, body.dump()}; }

Response error_response(int status, const std::string& code, const std::string& reason) {
    return json_response(status, {{"error", {{"code", code}, {"reason", reason}}}});
}

/// Maps domain exceptions onto status codes.
template <typename Fn>
Response guarded(Fn fn) {
    try {
        return fn();
    } catch (const NotFound& e) {
        return error_response(404, "not_found", e.what());
    } catch (const std::invalid_argument& e) {
        return error_response(400, "invalid_request", e.what());
    } catch (const Json::exception& e) {
        return error_response(400, "invalid_request", e.what());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

Json parse_body(const std::string& body) {
    Json doc = Json::parse(body, nullptr, false);
    if (doc.is_discarded()) throw std::invalid_argument("request body is not valid JSON");
    if (!doc.is_object()) throw std::invalid_argument("request body must be a JSON object");
    return doc;
}

}  // namespace

std::shared_ptr<const Snapshot> SnapshotCache::current() const {
    std::lock_guard lock(mutex_);
    return snapshot_;
}

void SnapshotCache::replace(std::vector<ValuationSheet> sheets) {
    auto next = std::make_shared<Snapshot>();
    for (auto& sheet : sheets) {
        const ComputeMode mode = sheet.compute_mode;
        next->sheets.insert_or_assign(mode, std::move(sheet));
    }
    std::lock_guard lock(mutex_);
    next->version = snapshot_->version + 1;
    snapshot_ = std::move(next);
}

TradeService::TradeService(ServiceOptions options, std::vector<ValuationSheet> sheets)
    : options_(std::move(options)), ratings_(options_.ratings_log) {
    options_.engine.validate();
    if (!sheets.empty()) {
        cache_.replace(std::move(sheets));
    } else if (options_.sheets_dir) {
        reload();
    }
}

void TradeService::reload() {
    if (!options_.sheets_dir) throw std::logic_error("service has no sheets directory to reload from");
    cache_.replace(load_sheets(*options_.sheets_dir));
}

Response TradeService::post_trades(const std::string& body) const {
    return guarded([&] {
        const Json doc = parse_body(body);
        const auto snapshot = cache_.current();

        std::optional<League> parsed;
        const League* league = nullptr;
        if (auto it = doc.find("league"); it != doc.end() && !it->is_null()) {
            parsed = league_from_json(*it);
            league = &*parsed;
        } else if (options_.default_league) {
            league = &*options_.default_league;
        } else {
            throw std::invalid_argument("missing field 'league'");
        }
        auto team = doc.find("requesting_team");
        if (team == doc.end() || !team->is_string()) throw std::invalid_argument("missing field 'requesting_team'");

        const PersonalizationRequest request =
            personalization_from_json(doc.contains("personalization") ? doc["personalization"] : Json(nullptr));

        EngineConfig config = options_.engine;
        if (auto it = doc.find("max_results"); it != doc.end() && !it->is_null()) {
            config.max_results = it->get<int>();
            if (config.max_results < 0) throw std::invalid_argument("max_results must be nonnegative");
        }

        std::vector<ValuationSheet> sheets;
        if (auto it = doc.find("compute_modes"); it != doc.end() && !it->is_null()) {
            if (!it->is_array()) throw std::invalid_argument("compute_modes must be an array");
            std::set<ComputeMode> modes;
            for (const auto& m : *it) modes.insert(parse_mode(m.get<std::string>()));
            for (ComputeMode mode : modes) {
                auto sheet = snapshot->sheets.find(mode);
                if (sheet == snapshot->sheets.end()) {
                    throw NotFound("no valuation sheet loaded for mode '" + std::string(to_string(mode)) + "'");
                }
                sheets.push_back(sheet->second);
            }
        } else {
            for (const auto& [mode, sheet] : snapshot->sheets) sheets.push_back(sheet);
        }
        if (sheets.empty()) throw NotFound("no valuation sheets loaded");

        const auto result = generate_trades(*league, team->get<std::string>(), request, sheets, config, options_.exec);
        Json trades = Json::array();
        for (const auto& t : result.trades) trades.push_back(to_json_value(t));
        return json_response(200, {{"trades", trades},
                                   {"candidates", result.candidates},
                                   {"rejected", result.rejections.size()},
                                   {"snapshot_version", snapshot->version}});
    });
}

Response TradeService::get_valuations(const std::string& mode) const {
    return guarded([&] {
        const ComputeMode m = parse_mode(mode.empty() ? "sme" : mode);
        const auto snapshot = cache_.current();
        auto it = snapshot->sheets.find(m);
        if (it == snapshot->sheets.end()) throw NotFound("no valuation sheet loaded for mode '" + mode + "'");
        return json_response(200, to_json_value(it->second));
    });
}

Response TradeService::post_ratings(const std::string& body) {
    return guarded([&] {
        const TradeRating rating = rating_from_json(parse_body(body));
        ratings_.append(rating);
        return json_response(201, to_json_value(rating));
    });
}

Response TradeService::get_evaluation() const {
    return guarded([&] {
        const auto ratings = ratings_.snapshot();
        return json_response(200, evaluation_report_json(ratings));
    });
}

RefreshTimer::RefreshTimer(std::chrono::milliseconds interval, std::function<void()> tick) {
    thread_ = std::thread([this, interval, tick = std::move(tick)] {
        std::unique_lock lock(mutex_);
        while (!cv_.wait_for(lock, interval, [this] { return stopping_; })) {
            lock.unlock();
            tick();
            lock.lock();
        }
    });
}

RefreshTimer::~RefreshTimer() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    cv_.notify_all();
    thread_.join();
}

HttpServer::HttpServer(TradeService& service) : server_(std::make_unique<httplib::Server>()) {
    auto send = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    server_->Post("/v1/trades", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.post_trades(req.body));
    });
    server_->Get("/v1/valuations", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.get_valuations(req.get_param_value("mode")));
    });
    server_->Post("/v1/ratings", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.post_ratings(req.body));
    });
    server_->Get("/v1/reports/evaluation", [&service, send](const httplib::Request&, httplib::Response& res) {
        send(res, service.get_evaluation());
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) {
        const int bound = server_->bind_to_any_port(host);
        if (bound < 0) throw std::runtime_error("cannot bind to " + host);
        return bound;
    }
    if (!server_->bind_to_port(host, port)) {
        throw std::runtime_error("cannot bind to " + host + ":" + std::to_string(port));
    }
    return port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::start() {
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void HttpServer::stop() {
    if (server_->is_running()) server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace fftrade
