#include "fftrade/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace fftrade {

namespace {

int rostered_count(Position pos, std::span<const PlayerRecord> roster) {
    return static_cast<int>(std::count_if(roster.begin(), roster.end(),
                                          [pos](const PlayerRecord& p) { return p.position == pos; }));
}

double lookup(const EquivalenceTable& table, int band, Position pos) {
    auto it = table.find({band, pos});
    return it == table.end() ? 1.0 : it->second;
}

template <typename Pred>
double qualifying_fraction(std::span<const double> player_log, std::span<const double> pool,
                           Pred qualifies) {
    if (pool.empty()) throw std::invalid_argument("position pool is empty");
    if (player_log.empty()) return 0.0;
    std::size_t hits = 0;
    for (double score : player_log) {
        if (qualifies(percentile_rank(score, pool))) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(player_log.size());
}

}  // namespace

double StatusPenalties::operator()(PlayerStatus status) const {
    auto it = multipliers.find(status);
    return it == multipliers.end() ? 1.0 : it->second;
}

void SmeWeights::validate() const {
    for (double a : {alpha1, alpha2, alpha3}) {
        if (!std::isfinite(a) || a < 0.0) throw std::invalid_argument("alpha weights must be finite and nonnegative");
    }
    if (!(decay_divisor > 0.0)) throw std::invalid_argument("decay_divisor must be positive");
    if (band_size < 1) throw std::invalid_argument("band_size must be positive");
    for (const auto& [status, m] : status_penalties.multipliers) {
        if (!(m > 0.0 && m <= 1.0)) {
            throw std::invalid_argument("status penalty for " + std::string(to_string(status)) +
                                        " must be in (0,1]");
        }
    }
}

void ModelImportanceProfile::validate() const {
    if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
        throw std::invalid_argument("profile " + model_id + ": accuracy must be in [0,1]");
    }
    for (const auto& [name, w] : importances) {
        if (!std::isfinite(w) || w < 0.0) {
            throw std::invalid_argument("profile " + model_id + ": importance of '" + name +
                                        "' must be finite and nonnegative");
        }
    }
    if (!rank_order.empty()) {
        std::set<std::string> ranked(rank_order.begin(), rank_order.end());
        if (ranked.size() != rank_order.size()) {
            throw std::invalid_argument("profile " + model_id + ": rank_order has duplicates");
        }
        if (ranked.size() != importances.size() ||
            !std::all_of(ranked.begin(), ranked.end(),
                         [&](const std::string& n) { return importances.contains(n); })) {
            throw std::invalid_argument("profile " + model_id +
                                        ": rank_order must be a permutation of the importance names");
        }
    }
}

double percentile_rank(double value, std::span<const double> pool) {
    if (pool.empty()) throw std::invalid_argument("position pool is empty");
    auto below = std::count_if(pool.begin(), pool.end(), [value](double s) { return s < value; });
    return 100.0 * static_cast<double>(below) / static_cast<double>(pool.size());
}

double boom_ratio(std::span<const double> player_log, std::span<const double> position_pool) {
    return qualifying_fraction(player_log, position_pool, [](double pct) { return pct >= 85.0; });
}

double bust_ratio(std::span<const double> player_log, std::span<const double> position_pool) {
    return qualifying_fraction(player_log, position_pool, [](double pct) { return pct <= 15.0; });
}

double projection_valuation(double x_pts, double mu_pts, double sigma_pts) {
    if (!(sigma_pts > 0.0)) throw std::invalid_argument("sigma_pts must be positive");
    const double z = (x_pts - mu_pts) / sigma_pts;
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double rank_to_score(int rank, int pool_size) {
    if (pool_size < 1 || rank < 1 || rank > pool_size) {
        throw std::invalid_argument("rank must be within [1, pool_size]");
    }
    return static_cast<double>(pool_size - rank + 1) / static_cast<double>(pool_size);
}

double sme_raw_valuation(const TierScores& tiers, int week, const SmeWeights& weights) {
    const double brand_decay = std::exp(-static_cast<double>(week) / weights.decay_divisor);
    return weights.alpha1 * tiers.tier1 + weights.alpha2 * tiers.tier2 +
           weights.alpha3 * tiers.tier3 + brand_decay * tiers.tier4;
}

double apply_state_and_equivalence(double raw, const PlayerRecord& player, int rank_band,
                                   const SmeWeights& weights) {
    return raw * weights.status_penalties(player.status) *
           lookup(weights.equivalence_boost, rank_band, player.position) *
           lookup(weights.equivalence_expert, rank_band, player.position);
}

double momentum_blend(double v_norm, double avg_points_prev, int week) {
    if (week > 6) return 6.0 * v_norm;
    const double w = static_cast<double>(std::max(week, 0));
    return w * v_norm + (6.0 - w) * avg_points_prev;
}

double normalize_to_sme_range(double x, const ValuationRange& range) {
    if (range.mode_high == range.mode_low) return 0.5 * (range.sme_low + range.sme_high);
    const double clamped = std::clamp(x, range.mode_low, range.mode_high);
    return range.sme_low + (range.sme_high - range.sme_low) / (range.mode_high - range.mode_low) *
                               (clamped - range.mode_low);
}

double model_raw_valuation(const FeatureVector& features, const ModelImportanceProfile& profile,
                           const PlayerRecord& player, const StatusPenalties& penalties) {
    double sum = 0.0;
    for (const auto& [name, weight] : profile.importances) {
        auto it = features.find(name);
        if (it == features.end()) {
            throw std::invalid_argument("feature '" + name + "' missing for player " + player.player_id);
        }
        sum += it->second * weight;
    }
    return penalties(player.status) * sum;
}

double model_valuation(const FeatureVector& features, const ModelImportanceProfile& profile,
                       const PlayerRecord& player, const ValuationRange& range,
                       const StatusPenalties& penalties) {
    return normalize_to_sme_range(model_raw_valuation(features, profile, player, penalties), range);
}

double slot_need(Position pos, std::span<const PlayerRecord> acquiring_roster,
                 const LeagueRules& rules) {
    const int rostered = rostered_count(pos, acquiring_roster);
    if (rostered == 0) return 1.0;
    return std::min(1.0, static_cast<double>(rules.slots_for(pos)) / rostered);
}

double depth_decay(Position pos, std::span<const PlayerRecord> acquiring_roster,
                   const LeagueRules& rules) {
    const int surplus = std::max(0, rostered_count(pos, acquiring_roster) - rules.slots_for(pos));
    return 1.0 / (1.0 + surplus);
}

double roster_adjustments(double valuation, const PlayerRecord& player,
                          std::span<const PlayerRecord> acquiring_roster,
                          const LeagueRules& rules) {
    return valuation * slot_need(player.position, acquiring_roster, rules) *
           depth_decay(player.position, acquiring_roster, rules);
}

}  // namespace fftrade
