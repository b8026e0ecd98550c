/// @file insights.hpp
/// @brief Trade metrics (parity, impact, pain, upside) and the rule filters
/// and thresholds that remove low-quality trades.

#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fftrade/trade.hpp"

namespace fftrade {

/// Half the gap in max-normalized incoming value plus half the gap in
/// outgoing cost (norm_pcost fractions) between the two sides.
double parity(const TradePackage& trade, const TradeContext& ctx);

/// Incoming integer value over outgoing integer cost for `team_id`.
double impact(const TradePackage& trade, const std::string& team_id, const TradeContext& ctx);

/// Outgoing cost over outgoing max-normalized value for `team_id`.
double pain(const TradePackage& trade, const std::string& team_id, const TradeContext& ctx);

struct UpsideFeatures {
    double parity = 0.0;
    double mean_pain = 0.0;
    double dissimilarity = 0.0;  // |angle - 90| / 90, 0 for the most complementary pair
    double min_impact = 0.0;
};

struct UpsideWeights {
    double bias = 1.0;
    double parity = -4.0;
    double mean_pain = -1.0;
    double dissimilarity = -1.0;
    double min_impact = 1.0;
};

/// Maps trade metrics to a probability-like score in [0,1].
using UpsideScorer = std::function<double(const UpsideFeatures&)>;

double upside(const UpsideFeatures& features, const UpsideWeights& weights);
UpsideScorer logistic_upside(UpsideWeights weights);

UpsideFeatures upside_features(const TradeInsights& partial, double pairing_angle);

/// Fills parity, impact, pain and upside.
TradeInsights compute_insights(const TradePackage& trade, const TradeContext& ctx,
                               const UpsideScorer& scorer);

enum class FilterRule : std::uint8_t {
    R1_starters_fillable,
    R2_only_player_at_position,
    R3_quarterback_swap,
    R4_simple_shape,
    R5_best_player_parity,
    R6_kicker_defense_paired,
    R7_position_stack,
    R8_side_size,
    R9_positional_swap,
    T_parity,
    T_pain,
    T_count_diff,
    T_upside,
};

inline constexpr std::size_t kFilterRuleCount = 13;

std::string_view to_string(FilterRule rule);
FilterRule parse_filter_rule(std::string_view text);

struct FilterConfig {
    double max_parity = 0.35;
    double max_pain = 1.5;
    int max_count_diff = 1;
    double min_upside = 0.5;
    int best_player_gap = 30;  // on the 1..100 value scale
    int max_side_players = 3;
    bool r3_all_positions = false;
    std::array<bool, kFilterRuleCount> enabled = {true, true, true, true, true, true, true,
                                                  true, true, true, true, true, true};

    bool is_enabled(FilterRule rule) const { return enabled[static_cast<std::size_t>(rule)]; }
    void set_enabled(FilterRule rule, bool on) { enabled[static_cast<std::size_t>(rule)] = on; }
};

/// First enabled rule the trade breaks, in declaration order.
std::optional<FilterRule> first_failing_rule(const TradePackage& trade, const TradeContext& ctx,
                                             const PersonalizationRequest& request,
                                             const FilterConfig& config);

struct Rejection {
    TradePackage trade;
    FilterRule rule;

    /// "<fingerprint> <rule> parity=... pain_a=... pain_b=... impact_a=... impact_b=... upside=..."
    std::string log_line() const;
};

struct FilterResult {
    std::vector<TradePackage> survivors;
    std::vector<Rejection> rejections;
};

using TradeContexts = std::map<ComputeMode, TradeContext>;

/// Trades must carry insights. Each trade is checked against its own mode's context.
FilterResult filter_trades(std::span<const TradePackage> trades, const TradeContexts& contexts,
                           const PersonalizationRequest& request, const FilterConfig& config);

}  // namespace fftrade
