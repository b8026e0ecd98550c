/// @file synthetic.hpp
/// @brief Seeded synthetic leagues and importance profiles for demos,
/// benchmarks and tests.

#pragma once

#include <cstdint>
#include <vector>

#include "fftrade/domain.hpp"
#include "fftrade/valuation.hpp"

namespace fftrade {

/// QB, RB x2, WR x2, TE, RB/WR/TE flex, K, DST.
LeagueRules standard_rules();

struct SyntheticOptions {
    int teams = 10;
    int players = 500;  // rostered plus free agents
    int week = 8;
    std::uint64_t seed = 7;
};

/// Rosters of 16 (QB 2, RB 5, WR 5, TE 2, K 1, DST 1) drafted from the
/// best players at each position; everyone else is a free agent.
League synthetic_league(const SyntheticOptions& options);

/// One SME expert profile, one classical and two quantum model profiles
/// over feature_registry().
std::vector<ModelImportanceProfile> synthetic_profiles(std::uint64_t seed);

}  // namespace fftrade
