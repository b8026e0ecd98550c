/// @file trade_engine.hpp
/// @brief Personalized knapsack trade construction and the multi-mode,
/// multi-pairing, multi-risk generation fan-out.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fftrade/execution.hpp"
#include "fftrade/insights.hpp"
#include "fftrade/knapsack.hpp"
#include "fftrade/trade.hpp"

namespace fftrade {

struct PersonalizationWeights {
    double watchlist = 1.25;        // w1
    double prefer_release = 0.8;    // w2
    double target_position = 1.2;   // w4
};

struct EngineConfig {
    int pairings_per_mode = 3;
    int max_items_per_side = 3;
    int max_results = 10;
    std::vector<double> risk_scales{1.0, 0.75, 0.5};
    PersonalizationWeights personalization;
    FilterConfig filters;
    UpsideWeights upside;
    UpsideScorer upside_scorer;  // empty: logistic over `upside`

    UpsideScorer scorer() const;
    void validate() const;
};

/// Which way a pool of players moves, seen from the requester.
enum class TradeRole { incoming, outgoing };

struct PersonalizedItems {
    std::vector<KnapsackItem> pool;
    std::vector<KnapsackItem> forced;
};

/// Drops untradables, boosts watchlist values (w1) and, on incoming pools,
/// target-position values (w4); cuts prefer_release costs (w2) on outgoing
/// pools; moves must_acquire (incoming) or must_release (outgoing) players
/// into `forced`.
PersonalizedItems apply_personalization(std::vector<KnapsackItem> items, TradeRole role,
                                        const PersonalizationRequest& request,
                                        const PersonalizationWeights& weights,
                                        const PlayerTable& players);

/// Runs the knapsack twice with roles swapped. Each side's capacity is
/// floor(risk * the highest release cost on the giving roster). Returns
/// nullopt when either side ends up empty. Insights are not filled.
std::optional<TradePackage> build_trade(const TradeContext& ctx, const std::string& requester,
                                        const std::string& opponent, double pairing_angle,
                                        const PersonalizationRequest& request, double risk,
                                        const EngineConfig& config);

struct GenerateResult {
    std::vector<TradePackage> trades;  // survivors, upside descending
    std::vector<Rejection> rejections;
    std::size_t candidates = 0;        // distinct trades before filtering
};

/// Every (mode, top-K pairing, risk level) task builds one candidate; the
/// parallel and serial paths return identical results.
GenerateResult generate_trades(const League& league, const std::string& requester,
                               const PersonalizationRequest& request,
                               std::span<const ValuationSheet> sheets, const EngineConfig& config,
                               Execution exec = Execution::parallel);

}  // namespace fftrade
