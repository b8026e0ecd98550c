/// @file trade.hpp
/// @brief Trade packages, personalization requests, and the per-mode
/// integer-scaled value/cost view of a league that trades are built on.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fftrade/cost.hpp"
#include "fftrade/domain.hpp"
#include "fftrade/sheet.hpp"

namespace fftrade {

struct PersonalizationRequest {
    std::set<std::string> watchlist;       // value boost (w1)
    std::set<std::string> prefer_release;  // cost cut (w2)
    std::set<std::string> untradables;     // excluded from every pool (w3)
    std::set<Position> target_positions;   // value boost on incoming players (w4)
    std::set<std::string> must_acquire;
    std::set<std::string> must_release;
    double risk = 1.0;  // alpha in (0, 1]

    bool is_personalized() const;
    /// Throws std::invalid_argument on an out-of-range risk or conflicting sets.
    void validate() const;
};

struct TradeInsights {
    double parity = 0.0;
    double impact_a = 0.0;
    double impact_b = 0.0;
    double pain_a = 0.0;
    double pain_b = 0.0;
    double upside = 0.0;
};

struct TradePackage {
    std::string team_a;  // requester
    std::string team_b;
    std::vector<std::string> a_receives;  // from team_b's roster, sorted
    std::vector<std::string> b_receives;  // from team_a's roster, sorted
    ComputeMode compute_mode = ComputeMode::sme;
    double pairing_angle = 0.0;
    double risk = 1.0;
    TradeInsights insights;

    /// Sorted player ids joined by ','; identical player sets share it.
    std::string fingerprint() const;
};

/// Integer-scaled values and release costs of every rostered player for
/// one compute mode. Holds references: the league and sheet must outlive it.
class TradeContext {
public:
    TradeContext(const League& league, const ValuationSheet& sheet);

    const League& league() const { return *league_; }
    const ValuationSheet& sheet() const { return *sheet_; }
    ComputeMode mode() const { return sheet_->compute_mode; }

    const Roster& roster(const std::string& team_id) const;
    const std::string& owner(const std::string& player_id) const;
    const PlayerRecord& player(const std::string& player_id) const { return league_->player(player_id); }

    /// Sheet valuation over the mode's sme_high, mapped to 1..100.
    int value(const std::string& player_id) const;
    /// norm_pcost on the owner's roster mapped to 1..100.
    int cost(const std::string& player_id) const;
    const CostBreakdown& cost_breakdown(const std::string& player_id) const;

    /// Value of `player_id` to `acquiring_team` after roster adjustments, 1..100.
    int acquisition_value(const std::string& player_id, const std::string& acquiring_team) const;

    int max_roster_value(const std::string& team_id) const;
    int max_roster_cost(const std::string& team_id) const;

private:
    const League* league_;
    const ValuationSheet* sheet_;
    std::map<std::string, Roster> rosters_;
    std::map<std::string, std::string> owners_;
    std::map<std::string, int> values_;
    std::map<std::string, CostBreakdown> costs_;
    std::map<std::string, int> int_costs_;
};

}  // namespace fftrade
