#include "fftrade/trade.hpp"

#include <algorithm>
#include <stdexcept>

#include "fftrade/knapsack.hpp"
#include "fftrade/valuation.hpp"

namespace fftrade {

bool PersonalizationRequest::is_personalized() const {
    return !watchlist.empty() || !prefer_release.empty() || !untradables.empty() ||
           !target_positions.empty() || !must_acquire.empty() || !must_release.empty();
}

void PersonalizationRequest::validate() const {
    if (!(risk > 0.0 && risk <= 1.0)) throw std::invalid_argument("risk must be in (0, 1]");
    for (const auto& id : must_acquire) {
        if (untradables.contains(id)) throw std::invalid_argument("must_acquire player " + id + " is untradable");
        if (must_release.contains(id)) {
            throw std::invalid_argument("player " + id + " is both must_acquire and must_release");
        }
    }
    for (const auto& id : must_release) {
        if (untradables.contains(id)) throw std::invalid_argument("must_release player " + id + " is untradable");
    }
}

std::string TradePackage::fingerprint() const {
    std::vector<std::string> ids = a_receives;
    ids.insert(ids.end(), b_receives.begin(), b_receives.end());
    std::sort(ids.begin(), ids.end());
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ',';
        out += id;
    }
    return out;
}

TradeContext::TradeContext(const League& league, const ValuationSheet& sheet)
    : league_(&league), sheet_(&sheet) {
    const PositionRanks ranks = positional_ranks(league.players, sheet);
    const double scale = sheet.sme_high > 0.0 ? sheet.sme_high : 1.0;
    for (const auto& team : league.teams) {
        Roster roster = league.roster_of(team);
        for (const auto& p : roster) {
            owners_[p.player_id] = team.team_id;
            values_[p.player_id] = integer_scale(sheet.valuation_of(p.player_id) / scale);
            CostBreakdown c = player_cost(p, roster, league.rules, ranks);
            int_costs_[p.player_id] = integer_scale(c.norm_pcost);
            costs_[p.player_id] = c;
        }
        rosters_.emplace(team.team_id, std::move(roster));
    }
}

const Roster& TradeContext::roster(const std::string& team_id) const {
    auto it = rosters_.find(team_id);
    if (it == rosters_.end()) throw NotFound("unknown team '" + team_id + "'");
    return it->second;
}

const std::string& TradeContext::owner(const std::string& player_id) const {
    auto it = owners_.find(player_id);
    if (it == owners_.end()) throw NotFound("player '" + player_id + "' is not rostered");
    return it->second;
}

int TradeContext::value(const std::string& player_id) const {
    auto it = values_.find(player_id);
    if (it == values_.end()) throw NotFound("player '" + player_id + "' is not rostered");
    return it->second;
}

int TradeContext::cost(const std::string& player_id) const {
    auto it = int_costs_.find(player_id);
    if (it == int_costs_.end()) throw NotFound("player '" + player_id + "' is not rostered");
    return it->second;
}

const CostBreakdown& TradeContext::cost_breakdown(const std::string& player_id) const {
    auto it = costs_.find(player_id);
    if (it == costs_.end()) throw NotFound("player '" + player_id + "' is not rostered");
    return it->second;
}

int TradeContext::acquisition_value(const std::string& player_id, const std::string& acquiring_team) const {
    const double scale = sheet_->sme_high > 0.0 ? sheet_->sme_high : 1.0;
    const double adjusted = roster_adjustments(sheet_->valuation_of(player_id), player(player_id),
                                               roster(acquiring_team), league_->rules);
    return integer_scale(adjusted / scale);
}

int TradeContext::max_roster_value(const std::string& team_id) const {
    int best = 0;
    for (const auto& p : roster(team_id)) best = std::max(best, value(p.player_id));
    return best;
}

int TradeContext::max_roster_cost(const std::string& team_id) const {
    int best = 0;
    for (const auto& p : roster(team_id)) best = std::max(best, cost(p.player_id));
    return best;
}

}  // namespace fftrade
