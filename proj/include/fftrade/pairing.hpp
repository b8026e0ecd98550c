/// @file pairing.hpp
/// @brief Team importance/strength vectors and dissimilarity-ranked pairings.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "fftrade/domain.hpp"
#include "fftrade/sheet.hpp"

namespace fftrade {

/// Per position (QB,RB,WR,TE,K,DST order): one-hot position code, starter
/// slots, eligible roster players, then average valuation, average inverted
/// rank, average/min/max projection and average percent owned.
inline constexpr std::size_t kTeamBlockSize = kAllPositions.size() + 2 + 6;
inline constexpr std::size_t kTeamVectorSize = kTeamBlockSize * kAllPositions.size();

struct TeamVector {
    std::vector<double> values;
};

TeamVector team_vector(const Team& team, const League& league, const ValuationSheet& sheet);

/// Angle in degrees between two nonzero vectors.
double dissimilarity_angle(const TeamVector& a, const TeamVector& b);

struct Pairing {
    std::string team_id;
    double angle = 0.0;
};

/// Opponents by angle, most dissimilar first; ties by team_id.
std::vector<Pairing> rank_pairings(const std::string& requesting_team,
                                   const std::map<std::string, TeamVector>& vectors);

std::map<std::string, TeamVector> team_vectors(const League& league, const ValuationSheet& sheet);

}  // namespace fftrade
