/// @file knapsack.hpp
/// @brief Exact cardinality-capped 0-1 knapsack over integer-scaled players.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace fftrade {

struct KnapsackItem {
    std::string player_id;
    int value = 1;   // 1..100 scaled valuation
    int weight = 1;  // 1..100 scaled release cost
};

struct KnapsackSelection {
    std::vector<std::size_t> indices;  // into the input items, ordered by player_id
    int total_value = 0;
    int total_weight = 0;
};

/// ceil(v * 100) clamped to [1, 100].
int integer_scale(double v);

/// Maximizes total value with total weight <= capacity and at most
/// `max_items` items. Ties prefer fewer items, then the lexicographically
/// smallest sorted id list.
KnapsackSelection knapsack_01(std::span<const KnapsackItem> items, int capacity, int max_items);

}  // namespace fftrade
