/// @file cost.hpp
/// @brief Tradability cost of a rostered player from its roster context.

#pragma once

#include <map>
#include <span>
#include <string>

#include "fftrade/domain.hpp"

namespace fftrade {

struct CostBreakdown {
    double position_importance_term = 0.0;
    double all_roster_projection_term = 0.0;
    double position_projection_term = 0.0;
    double rank_term = 0.0;
    double pre_pc = 0.0;
    double norm_pcost = 0.0;
};

/// League-wide positional rank per player, 1 = best.
using PositionRanks = std::map<std::string, int>;

/// Starter slots open to `position` over roster players eligible for them.
/// A position with no eligible players is fully scarce (1.0).
double position_importance(const LeagueRules& rules, Position position,
                           std::span<const PlayerRecord> roster);

/// Mean of four roster-context ratios. The position-importance term is
/// scaled by the larger of 1 and the roster's highest position importance;
/// the rank term is inverted so the best-ranked player carries 1.0.
CostBreakdown player_cost(const PlayerRecord& player, std::span<const PlayerRecord> roster,
                          const LeagueRules& rules, const PositionRanks& position_ranks);

}  // namespace fftrade
