#include "fftrade/cost.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace fftrade {

namespace {

int rank_of(const PositionRanks& ranks, const std::string& id) {
    auto it = ranks.find(id);
    if (it == ranks.end()) throw std::invalid_argument("no positional rank for player " + id);
    return it->second;
}

}  // namespace

double position_importance(const LeagueRules& rules, Position position,
                           std::span<const PlayerRecord> roster) {
    int slots = 0;
    std::set<Position> eligible;
    for (const auto& rule : rules.slot_rules) {
        if (!rule.accepts(position)) continue;
        slots += rule.count;
        eligible.insert(rule.eligible_positions.begin(), rule.eligible_positions.end());
    }
    if (slots == 0) return 0.0;
    const auto candidates = std::count_if(roster.begin(), roster.end(), [&](const PlayerRecord& p) {
        return eligible.contains(p.position);
    });
    if (candidates == 0) return 1.0;
    return static_cast<double>(slots) / static_cast<double>(candidates);
}

CostBreakdown player_cost(const PlayerRecord& player, std::span<const PlayerRecord> roster,
                          const LeagueRules& rules, const PositionRanks& position_ranks) {
    double roster_total = 0.0;
    double position_total = 0.0;
    double max_importance = 1.0;
    int best_rank = std::numeric_limits<int>::max();
    int worst_rank = 0;
    std::set<Position> seen;
    bool on_roster = false;
    for (const auto& p : roster) {
        on_roster = on_roster || p.player_id == player.player_id;
        roster_total += p.season_projection;
        if (seen.insert(p.position).second) {
            max_importance = std::max(max_importance, position_importance(rules, p.position, roster));
        }
        if (p.position == player.position) {
            position_total += p.season_projection;
            const int r = rank_of(position_ranks, p.player_id);
            best_rank = std::min(best_rank, r);
            worst_rank = std::max(worst_rank, r);
        }
    }
    if (!on_roster) throw std::invalid_argument("player " + player.player_id + " is not on the roster");
    if (!(roster_total > 0.0) || !(position_total > 0.0)) {
        throw std::invalid_argument("roster projections must sum to a positive total for player " +
                                    player.player_id);
    }

    const int own_rank = rank_of(position_ranks, player.player_id);
    const int inv_rank = worst_rank - own_rank + 1;
    const int max_inv_rank = worst_rank - best_rank + 1;

    CostBreakdown c;
    c.position_importance_term = position_importance(rules, player.position, roster) / max_importance;
    c.all_roster_projection_term = player.season_projection / roster_total;
    c.position_projection_term = player.season_projection / position_total;
    c.rank_term = static_cast<double>(inv_rank) / static_cast<double>(max_inv_rank);
    c.pre_pc = 0.25 * (c.position_importance_term + c.all_roster_projection_term +
                       c.position_projection_term + c.rank_term);
    c.norm_pcost = std::clamp(c.pre_pc, 0.0, 1.0);
    return c;
}

}  // namespace fftrade
