/// @file valuation.hpp
/// @brief Broad per-player market valuations: the expert-rule (SME) pipeline,
/// the importance-weighted model pipeline, and normalization of every compute
/// mode onto the day's SME range.

#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fftrade/domain.hpp"

namespace fftrade {

struct ValuationRange {
    double sme_low = 0.0;
    double sme_high = 1.0;
    double mode_low = 0.0;
    double mode_high = 1.0;
};

/// Tier scores in [0,1]; 1 is best.
struct TierScores {
    double tier1 = 0.0;  // season-long projection rank
    double tier2 = 0.0;  // boom, bust, next-game projection
    double tier3 = 0.0;  // current-week boom, % started, preseason, PV
    double tier4 = 0.0;  // average draft position
};

/// Multipliers in (0,1] applied to a valuation for a non-active status.
struct StatusPenalties {
    std::map<PlayerStatus, double> multipliers{
        {PlayerStatus::probable, 0.95},      {PlayerStatus::questionable, 0.8},
        {PlayerStatus::doubtful, 0.6},       {PlayerStatus::covid_list, 0.5},
        {PlayerStatus::suspended, 0.4},      {PlayerStatus::out, 0.3},
        {PlayerStatus::injured_reserve, 0.2},
    };

    double operator()(PlayerStatus status) const;
};

/// (rank band, position) -> multiplier. Missing entries mean 1.0.
using EquivalenceTable = std::map<std::pair<int, Position>, double>;

struct SmeWeights {
    double alpha1 = 0.4;
    double alpha2 = 0.3;
    double alpha3 = 0.2;
    double decay_divisor = 3.0;
    StatusPenalties status_penalties;
    int band_size = 12;
    EquivalenceTable equivalence_boost;   // beta1
    EquivalenceTable equivalence_expert;  // beta2

    void validate() const;
};

using FeatureVector = std::map<std::string, double>;

struct ModelImportanceProfile {
    std::string model_id;
    ComputeMode compute_mode = ComputeMode::classical;
    double accuracy = 0.0;
    std::map<std::string, double> importances;
    std::vector<std::string> rank_order;

    void validate() const;
};

/// Share of the pool strictly below `value`, in percent.
double percentile_rank(double value, std::span<const double> pool);

double boom_ratio(std::span<const double> player_log, std::span<const double> position_pool);
double bust_ratio(std::span<const double> player_log, std::span<const double> position_pool);

/// Normal CDF of the projected season score against the positional mean/sd.
double projection_valuation(double x_pts, double mu_pts, double sigma_pts);

/// Ordinal rank (1 = best of `pool_size`) to a score in (0,1].
double rank_to_score(int rank, int pool_size);

double sme_raw_valuation(const TierScores& tiers, int week, const SmeWeights& weights);

double apply_state_and_equivalence(double raw, const PlayerRecord& player, int rank_band,
                                   const SmeWeights& weights);

/// Blends in last season's contribution, which decays to zero at week 6.
double momentum_blend(double v_norm, double avg_points_prev, int week);

double normalize_to_sme_range(double x, const ValuationRange& range);

/// Status-penalised importance-weighted product sum, before normalization.
double model_raw_valuation(const FeatureVector& features, const ModelImportanceProfile& profile,
                           const PlayerRecord& player, const StatusPenalties& penalties);

double model_valuation(const FeatureVector& features, const ModelImportanceProfile& profile,
                       const PlayerRecord& player, const ValuationRange& range,
                       const StatusPenalties& penalties = {});

double slot_need(Position pos, std::span<const PlayerRecord> acquiring_roster,
                 const LeagueRules& rules);
double depth_decay(Position pos, std::span<const PlayerRecord> acquiring_roster,
                   const LeagueRules& rules);

/// League-specific value of `player` to the team owning `acquiring_roster`.
double roster_adjustments(double valuation, const PlayerRecord& player,
                          std::span<const PlayerRecord> acquiring_roster,
                          const LeagueRules& rules);

}  // namespace fftrade
