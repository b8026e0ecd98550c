#include "fftrade/insights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fftrade {

namespace {

constexpr std::array<std::string_view, kFilterRuleCount> kRuleNames{
    "R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9",
    "T_parity", "T_pain", "T_count_diff", "T_upside"};

const std::vector<std::string>& outgoing_of(const TradePackage& t, const std::string& team) {
    if (team == t.team_a) return t.b_receives;
    if (team == t.team_b) return t.a_receives;
    throw std::invalid_argument("team " + team + " is not part of the trade");
}

const std::vector<std::string>& incoming_of(const TradePackage& t, const std::string& team) {
    if (team == t.team_a) return t.a_receives;
    if (team == t.team_b) return t.b_receives;
    throw std::invalid_argument("team " + team + " is not part of the trade");
}

double normalized_value_sum(const std::vector<std::string>& ids, int max_value, const TradeContext& ctx) {
    if (max_value <= 0) throw std::invalid_argument("team has no positive roster value");
    double sum = 0.0;
    for (const auto& id : ids) sum += static_cast<double>(ctx.value(id)) / max_value;
    return sum;
}

double cost_fraction_sum(const std::vector<std::string>& ids, const TradeContext& ctx) {
    double sum = 0.0;
    for (const auto& id : ids) sum += ctx.cost(id) / 100.0;
    return sum;
}

Roster after_trade(const Roster& before, const std::vector<std::string>& out,
                   const std::vector<std::string>& in, const TradeContext& ctx) {
    Roster result;
    for (const auto& p : before) {
        if (std::find(out.begin(), out.end(), p.player_id) == out.end()) result.push_back(p);
    }
    for (const auto& id : in) result.push_back(ctx.player(id));
    return result;
}

int count_at(const Roster& roster, Position pos) {
    return static_cast<int>(std::count_if(roster.begin(), roster.end(),
                                          [pos](const PlayerRecord& p) { return p.position == pos; }));
}

bool is_special_teams(Position pos) { return pos == Position::K || pos == Position::DST; }

bool breaks_rule(FilterRule rule, const TradePackage& t, const TradeContext& ctx,
                 const PersonalizationRequest& request, const FilterConfig& config) {
    const auto& side_a = t.a_receives;
    const auto& side_b = t.b_receives;
    auto pos_of = [&](const std::string& id) { return ctx.player(id).position; };

    switch (rule) {
        case FilterRule::R1_starters_fillable: {
            const Roster& a = ctx.roster(t.team_a);
            const Roster& b = ctx.roster(t.team_b);
            return !starters_fillable(ctx.league().rules, after_trade(a, side_b, side_a, ctx)) ||
                   !starters_fillable(ctx.league().rules, after_trade(b, side_a, side_b, ctx));
        }
        case FilterRule::R2_only_player_at_position: {
            for (const auto& [team, outgoing] : {std::pair{t.team_a, &side_b}, std::pair{t.team_b, &side_a}}) {
                const Roster& roster = ctx.roster(team);
                for (const auto& id : *outgoing) {
                    if (count_at(roster, pos_of(id)) <= 1) return true;
                }
            }
            return false;
        }
        case FilterRule::R3_quarterback_swap:
            return side_a.size() == 1 && side_b.size() == 1 && pos_of(side_a[0]) == pos_of(side_b[0]) &&
                   (config.r3_all_positions || pos_of(side_a[0]) == Position::QB);
        case FilterRule::R4_simple_shape:
            if (request.is_personalized()) return false;
            return !(side_a.size() == side_b.size() && (side_a.size() == 1 || side_a.size() == 2));
        case FilterRule::R5_best_player_parity: {
            auto best = [&](const std::vector<std::string>& ids) {
                int m = 0;
                for (const auto& id : ids) m = std::max(m, ctx.value(id));
                return m;
            };
            return std::abs(best(side_a) - best(side_b)) > config.best_player_gap;
        }
        case FilterRule::R6_kicker_defense_paired:
            for (const auto* side : {&side_a, &side_b}) {
                const bool has_special = std::any_of(side->begin(), side->end(),
                                                     [&](const auto& id) { return is_special_teams(pos_of(id)); });
                const bool has_other = std::any_of(side->begin(), side->end(),
                                                   [&](const auto& id) { return !is_special_teams(pos_of(id)); });
                if (has_special && !has_other) return true;
            }
            return false;
        case FilterRule::R7_position_stack:
            for (const auto* side : {&side_a, &side_b}) {
                for (Position pos : kAllPositions) {
                    const auto n = std::count_if(side->begin(), side->end(),
                                                 [&](const auto& id) { return pos_of(id) == pos; });
                    if (n >= 3) return true;
                }
            }
            return false;
        case FilterRule::R8_side_size:
            return static_cast<int>(side_a.size()) > config.max_side_players ||
                   static_cast<int>(side_b.size()) > config.max_side_players;
        case FilterRule::R9_positional_swap:
            return !request.is_personalized() && side_a.size() == 1 && side_b.size() == 1 &&
                   pos_of(side_a[0]) == pos_of(side_b[0]);
        case FilterRule::T_parity:
            return t.insights.parity > config.max_parity;
        case FilterRule::T_pain:
            return t.insights.pain_a > config.max_pain || t.insights.pain_b > config.max_pain;
        case FilterRule::T_count_diff:
            return std::abs(static_cast<int>(side_a.size()) - static_cast<int>(side_b.size())) >
                   config.max_count_diff;
        case FilterRule::T_upside:
            return t.insights.upside < config.min_upside;
    }
    return false;
}

}  // namespace

double parity(const TradePackage& trade, const TradeContext& ctx) {
    const double value_a = normalized_value_sum(trade.a_receives, ctx.max_roster_value(trade.team_a), ctx);
    const double value_b = normalized_value_sum(trade.b_receives, ctx.max_roster_value(trade.team_b), ctx);
    const double cost_a = cost_fraction_sum(trade.b_receives, ctx);  // A's outgoing
    const double cost_b = cost_fraction_sum(trade.a_receives, ctx);  // B's outgoing
    return 0.5 * std::abs(value_a - value_b) + 0.5 * std::abs(cost_a - cost_b);
}

double impact(const TradePackage& trade, const std::string& team_id, const TradeContext& ctx) {
    int incoming = 0;
    int outgoing = 0;
    for (const auto& id : incoming_of(trade, team_id)) incoming += ctx.value(id);
    for (const auto& id : outgoing_of(trade, team_id)) outgoing += ctx.cost(id);
    if (outgoing == 0) throw std::invalid_argument("impact undefined: team " + team_id + " gives nothing");
    return static_cast<double>(incoming) / outgoing;
}

double pain(const TradePackage& trade, const std::string& team_id, const TradeContext& ctx) {
    const auto& outgoing = outgoing_of(trade, team_id);
    const double value = normalized_value_sum(outgoing, ctx.max_roster_value(team_id), ctx);
    if (!(value > 0.0)) throw std::invalid_argument("pain undefined: team " + team_id + " gives nothing");
    return cost_fraction_sum(outgoing, ctx) / value;
}

double upside(const UpsideFeatures& f, const UpsideWeights& w) {
    const double z = w.bias + w.parity * f.parity + w.mean_pain * f.mean_pain +
                     w.dissimilarity * f.dissimilarity + w.min_impact * f.min_impact;
    return 1.0 / (1.0 + std::exp(-z));
}

UpsideScorer logistic_upside(UpsideWeights weights) {
    return [weights](const UpsideFeatures& f) { return upside(f, weights); };
}

UpsideFeatures upside_features(const TradeInsights& partial, double pairing_angle) {
    return {partial.parity, 0.5 * (partial.pain_a + partial.pain_b),
            std::abs(pairing_angle - 90.0) / 90.0, std::min(partial.impact_a, partial.impact_b)};
}

TradeInsights compute_insights(const TradePackage& trade, const TradeContext& ctx,
                               const UpsideScorer& scorer) {
    TradeInsights out;
    out.parity = parity(trade, ctx);
    out.impact_a = impact(trade, trade.team_a, ctx);
    out.impact_b = impact(trade, trade.team_b, ctx);
    out.pain_a = pain(trade, trade.team_a, ctx);
    out.pain_b = pain(trade, trade.team_b, ctx);
    out.upside = scorer(upside_features(out, trade.pairing_angle));
    return out;
}

std::string_view to_string(FilterRule rule) { return kRuleNames[static_cast<std::size_t>(rule)]; }

FilterRule parse_filter_rule(std::string_view text) {
    for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
        if (kRuleNames[i] == text) return static_cast<FilterRule>(i);
    }
    throw std::invalid_argument("unknown filter rule '" + std::string(text) + "'");
}

std::optional<FilterRule> first_failing_rule(const TradePackage& trade, const TradeContext& ctx,
                                             const PersonalizationRequest& request,
                                             const FilterConfig& config) {
    for (std::size_t i = 0; i < kFilterRuleCount; ++i) {
        const auto rule = static_cast<FilterRule>(i);
        if (config.is_enabled(rule) && breaks_rule(rule, trade, ctx, request, config)) return rule;
    }
    return std::nullopt;
}

std::string Rejection::log_line() const {
    char metrics[256];
    std::snprintf(metrics, sizeof metrics,
                  " parity=%.6f pain_a=%.6f pain_b=%.6f impact_a=%.6f impact_b=%.6f upside=%.6f",
                  trade.insights.parity, trade.insights.pain_a, trade.insights.pain_b,
                  trade.insights.impact_a, trade.insights.impact_b, trade.insights.upside);
    return trade.fingerprint() + " " + std::string(to_string(rule)) + metrics;
}

FilterResult filter_trades(std::span<const TradePackage> trades, const TradeContexts& contexts,
                           const PersonalizationRequest& request, const FilterConfig& config) {
    FilterResult out;
    for (const auto& trade : trades) {
        auto ctx = contexts.find(trade.compute_mode);
        if (ctx == contexts.end()) {
            throw std::invalid_argument("no context for compute mode " + std::string(to_string(trade.compute_mode)));
        }
        if (auto rule = first_failing_rule(trade, ctx->second, request, config)) {
            out.rejections.push_back({trade, *rule});
        } else {
            out.survivors.push_back(trade);
        }
    }
    return out;
}

}  // namespace fftrade
