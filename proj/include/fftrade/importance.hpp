/// @file importance.hpp
/// @brief Permutation importance, tiered importance combination, ensemble
/// weights and the accuracy@rank-diff@variance diversity notation.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fftrade/execution.hpp"
#include "fftrade/valuation.hpp"

namespace fftrade {

struct LabeledDataset {
    std::vector<FeatureVector> rows;
    std::vector<int> labels;  // 1 = good trade, 0 = bad

    void validate() const;
};

/// Black-box model score over a dataset (e.g. accuracy).
using DatasetScorer = std::function<double(const LabeledDataset&)>;

/// Mean drop in score over `repeats` independent shuffles of one column.
/// The shuffle stream is derived from (seed, feature) only.
double permutation_importance(const DatasetScorer& score, const LabeledDataset& data,
                              const std::string& feature, int repeats, std::uint64_t seed);

/// All features at once; the parallel path gives identical output.
std::map<std::string, double> permutation_importances(const DatasetScorer& score,
                                                      const LabeledDataset& data,
                                                      std::span<const std::string> features,
                                                      int repeats, std::uint64_t seed,
                                                      Execution exec = Execution::parallel);

double tier_boost(double importance, double tier_accuracy);

std::vector<double> normalize_importances(std::span<const double> boosted);

/// One tier of a tiered model: its accuracy and raw importances.
struct TierImportance {
    double accuracy = 0.0;
    std::map<std::string, double> importances;
};

/// Boosts every feature by its tier's accuracy and normalizes across all tiers.
std::map<std::string, double> combine_tiers(std::span<const TierImportance> tiers);

struct ModelDiversity {
    double accuracy = 0.0;
    double avg_rank_diff = 0.0;
    double variance = 0.0;
};

/// Per-feature weight combining every model's importance by its share of
/// the summed accuracy, rank difference and variance.
std::map<std::string, double> ensemble_weights(std::span<const ModelImportanceProfile> profiles,
                                               std::span<const ModelDiversity> stats);

/// Total rank displacement between two orderings over floor(n^2/2).
double rank_diff_pct(std::span<const std::string> ranks_a, std::span<const std::string> ranks_b);

double avg_rank_diff(double vs_classical, double vs_sme);

double importance_variance(std::span<const double> importances);

struct DiversityTriple {
    double accuracy = 0.0;
    double avg_rank_diff = 0.0;
    double importance_variance = 0.0;

    /// "95.70%@67.00%@0.002"
    std::string render() const;
};

DiversityTriple diversity_triple(double accuracy, double avg_rank_diff, double variance);

struct DiversityRow {
    std::string model_id;
    ComputeMode compute_mode = ComputeMode::classical;
    DiversityTriple triple;
};

/// Diversity of every model profile. A model's rank difference averages its
/// distance to the best-accuracy profile of every other compute mode, so a
/// quantum model is compared with the SME expert ranking and the classical
/// leader. Profiles without a rank_order are ranked by importance.
std::vector<DiversityRow> diversity_report(std::span<const ModelImportanceProfile> profiles);

}  // namespace fftrade
