#include "fftrade/trade_engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <stdexcept>

#include "fftrade/pairing.hpp"

namespace fftrade {

namespace {

int scaled(int base, double factor) {
    return std::clamp(static_cast<int>(std::ceil(base * factor - 1e-9)), 1, 100);
}

int risk_capacity(double risk, int max_cost) {
    return static_cast<int>(std::floor(risk * max_cost + 1e-9));
}

std::vector<std::string> select_side(const PersonalizedItems& items, int capacity, int max_items) {
    std::vector<std::string> chosen;
    int used = 0;
    for (const auto& f : items.forced) {
        chosen.push_back(f.player_id);
        used += f.weight;
    }
    const int remaining_items = max_items - static_cast<int>(items.forced.size());
    if (remaining_items >= 1) {
        const auto pick = knapsack_01(items.pool, std::max(0, capacity - used), remaining_items);
        for (std::size_t i : pick.indices) chosen.push_back(items.pool[i].player_id);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

struct Task {
    ComputeMode mode;
    std::string opponent;
    double angle;
    double risk;
};

}  // namespace

UpsideScorer EngineConfig::scorer() const {
    return upside_scorer ? upside_scorer : logistic_upside(upside);
}

void EngineConfig::validate() const {
    if (pairings_per_mode < 1) throw std::invalid_argument("pairings_per_mode must be at least 1");
    if (max_items_per_side < 1) throw std::invalid_argument("max_items_per_side must be at least 1");
    if (max_results < 0) throw std::invalid_argument("max_results must be nonnegative");
    for (double s : risk_scales) {
        if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("risk scales must be in (0, 1]");
    }
}

PersonalizedItems apply_personalization(std::vector<KnapsackItem> items, TradeRole role,
                                        const PersonalizationRequest& request,
                                        const PersonalizationWeights& weights,
                                        const PlayerTable& players) {
    PersonalizedItems out;
    const auto& forced_ids = role == TradeRole::incoming ? request.must_acquire : request.must_release;
    for (auto& item : items) {
        if (request.untradables.contains(item.player_id)) continue;
        if (request.watchlist.contains(item.player_id)) item.value = scaled(item.value, weights.watchlist);
        if (role == TradeRole::incoming) {
            auto it = players.find(item.player_id);
            if (it != players.end() && request.target_positions.contains(it->second.position)) {
                item.value = scaled(item.value, weights.target_position);
            }
        } else if (request.prefer_release.contains(item.player_id)) {
            item.weight = scaled(item.weight, weights.prefer_release);
        }
        if (forced_ids.contains(item.player_id)) {
            out.forced.push_back(item);
        } else {
            out.pool.push_back(item);
        }
    }
    return out;
}

std::optional<TradePackage> build_trade(const TradeContext& ctx, const std::string& requester,
                                        const std::string& opponent, double pairing_angle,
                                        const PersonalizationRequest& request, double risk,
                                        const EngineConfig& config) {
    const Roster& own = ctx.roster(requester);
    const Roster& theirs = ctx.roster(opponent);
    for (const auto& id : request.must_release) {
        if (ctx.owner(id) != requester) {
            throw std::invalid_argument("must_release player " + id + " is not on team " + requester);
        }
    }
    for (const auto& id : request.must_acquire) {
        if (ctx.owner(id) != opponent) return std::nullopt;
    }

    std::vector<KnapsackItem> incoming;
    for (const auto& p : theirs) {
        incoming.push_back({p.player_id, ctx.acquisition_value(p.player_id, requester), ctx.cost(p.player_id)});
    }
    std::vector<KnapsackItem> outgoing;
    for (const auto& p : own) {
        outgoing.push_back({p.player_id, ctx.acquisition_value(p.player_id, opponent), ctx.cost(p.player_id)});
    }
    const auto& players = ctx.league().players;
    const auto in_items = apply_personalization(std::move(incoming), TradeRole::incoming, request,
                                                config.personalization, players);
    const auto out_items = apply_personalization(std::move(outgoing), TradeRole::outgoing, request,
                                                 config.personalization, players);

    TradePackage trade;
    trade.team_a = requester;
    trade.team_b = opponent;
    trade.compute_mode = ctx.mode();
    trade.pairing_angle = pairing_angle;
    trade.risk = risk;
    trade.a_receives = select_side(in_items, risk_capacity(risk, ctx.max_roster_cost(opponent)),
                                   config.max_items_per_side);
    trade.b_receives = select_side(out_items, risk_capacity(risk, ctx.max_roster_cost(requester)),
                                   config.max_items_per_side);
    if (trade.a_receives.empty() || trade.b_receives.empty()) return std::nullopt;
    return trade;
}

GenerateResult generate_trades(const League& league, const std::string& requester,
                               const PersonalizationRequest& request,
                               std::span<const ValuationSheet> sheets, const EngineConfig& config,
                               Execution exec) {
    request.validate();
    config.validate();
    league.team(requester);

    std::string acquire_from;
    for (const auto& id : request.must_acquire) {
        league.player(id);
        const std::string owner = league.owner_of(id);
        if (owner.empty()) throw std::invalid_argument("must_acquire player " + id + " is not rostered");
        if (owner == requester) throw std::invalid_argument("must_acquire player " + id + " is already on " + requester);
        if (!acquire_from.empty() && owner != acquire_from) {
            throw std::invalid_argument("must_acquire players are spread over several teams");
        }
        acquire_from = owner;
    }
    for (const auto& id : request.must_release) {
        league.player(id);
        if (league.owner_of(id) != requester) {
            throw std::invalid_argument("must_release player " + id + " is not on team " + requester);
        }
    }

    TradeContexts contexts;
    std::vector<Task> tasks;
    for (const auto& sheet : sheets) {
        if (contexts.contains(sheet.compute_mode)) continue;
        contexts.emplace(sheet.compute_mode, TradeContext(league, sheet));
        auto pairings = rank_pairings(requester, team_vectors(league, sheet));
        if (!acquire_from.empty()) {
            std::erase_if(pairings, [&](const Pairing& p) { return p.team_id != acquire_from; });
        }
        if (pairings.size() > static_cast<std::size_t>(config.pairings_per_mode)) {
            pairings.resize(static_cast<std::size_t>(config.pairings_per_mode));
        }
        for (const auto& pairing : pairings) {
            for (double scale : config.risk_scales) {
                tasks.push_back({sheet.compute_mode, pairing.team_id, pairing.angle, request.risk * scale});
            }
        }
    }

    const UpsideScorer scorer = config.scorer();
    std::vector<std::optional<TradePackage>> built(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    const long n = static_cast<long>(tasks.size());

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (long i = 0; i < n; ++i) {
        try {
            const Task& task = tasks[i];
            const TradeContext& ctx = contexts.at(task.mode);
            auto trade = build_trade(ctx, requester, task.opponent, task.angle, request, task.risk, config);
            if (trade) trade->insights = compute_insights(*trade, ctx, scorer);
            built[i] = std::move(trade);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    // Merge in task order so the first mode/pairing/risk to produce a trade owns it.
    std::vector<TradePackage> candidates;
    std::set<std::string> seen;
    for (auto& trade : built) {
        if (trade && seen.insert(trade->fingerprint()).second) candidates.push_back(std::move(*trade));
    }

    GenerateResult result;
    result.candidates = candidates.size();
    auto filtered = filter_trades(candidates, contexts, request, config.filters);
    result.rejections = std::move(filtered.rejections);
    result.trades = std::move(filtered.survivors);
    std::stable_sort(result.trades.begin(), result.trades.end(), [](const TradePackage& a, const TradePackage& b) {
        if (a.insights.upside != b.insights.upside) return a.insights.upside > b.insights.upside;
        return a.fingerprint() < b.fingerprint();
    });
    if (result.trades.size() > static_cast<std::size_t>(config.max_results)) {
        result.trades.resize(static_cast<std::size_t>(config.max_results));
    }
    return result;
}

}  // namespace fftrade
