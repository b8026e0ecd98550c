/// @file sheet.hpp
/// @brief Per-compute-mode valuation snapshots and the batch job producing them.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fftrade/cost.hpp"
#include "fftrade/execution.hpp"
#include "fftrade/valuation.hpp"

namespace fftrade {

struct SheetEntry {
    std::string player_id;
    double valuation = 0.0;
    std::optional<CostBreakdown> cost;  // only for rostered players
    double boom = 0.0;
    double bust = 0.0;
    double percent_owned = 0.0;
    int opponent_rank = 0;
    int games_left = 0;
    double season_actual = 0.0;
    double season_projection = 0.0;
};

class ValuationSheet {
public:
    ComputeMode compute_mode = ComputeMode::sme;
    std::string generated_at;
    double sme_low = 0.0;
    double sme_high = 0.0;

    const std::vector<SheetEntry>& entries() const { return entries_; }
    void set_entries(std::vector<SheetEntry> entries);

    const SheetEntry* find(const std::string& player_id) const;
    /// Valuation of a listed player; 0 for players outside the top-n.
    double valuation_of(const std::string& player_id) const;

private:
    std::vector<SheetEntry> entries_;
    std::map<std::string, std::size_t> index_;
};

/// League-wide positional ranks by sheet valuation (desc, ties by id);
/// players missing from the sheet rank after every listed player.
PositionRanks positional_ranks(const PlayerTable& players, const ValuationSheet& sheet);

/// Names of the per-player model features, in registry order.
const std::vector<std::string>& feature_registry();

/// Model features for every player. Rank-style features are position
/// relative; fractions and sentiment pass through.
std::map<std::string, FeatureVector> extract_features(const PlayerTable& players,
                                                      Execution exec = Execution::parallel);

/// Boom/bust ratios against the positional pool of every logged game.
struct BoomBust {
    double boom = 0.0;
    double bust = 0.0;
    double current_week_boom = 0.0;  // 1 when the latest game is a boom
};
std::map<std::string, BoomBust> boom_bust_table(const PlayerTable& players);

struct BatchInputs {
    PlayerTable players;
    std::optional<League> league;  // rules and rosters, enables cost entries
    std::vector<ModelImportanceProfile> profiles;
    SmeWeights weights;
    int top_n = 400;
    int week = 0;
    std::string generated_at = "1970-01-01T00:00:00Z";
};

struct BatchResult {
    std::vector<ValuationSheet> sheets;
    std::vector<std::string> warnings;
};

/// Final SME valuation per player (before truncation).
std::map<std::string, double> sme_valuations(const PlayerTable& players, const SmeWeights& weights,
                                             int week, Execution exec = Execution::parallel);

/// One sheet per compute mode with a usable profile; SME always present.
/// Modes without a profile are skipped with a warning.
BatchResult batch_valuate(const BatchInputs& inputs, Execution exec = Execution::parallel);

/// Writes sheet_<mode>.json per sheet; returns the paths written.
std::vector<std::filesystem::path> write_sheets(const std::vector<ValuationSheet>& sheets,
                                                const std::filesystem::path& dir);
ValuationSheet load_sheet(const std::filesystem::path& path);
/// Every sheet_<mode>.json found in `dir`.
std::vector<ValuationSheet> load_sheets(const std::filesystem::path& dir);

}  // namespace fftrade
