#include "fftrade/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fftrade {

namespace {

struct Candidate {
    int value = 0;
    int weight = 0;
    std::vector<std::size_t> order;  // positions in id-sorted item order, ascending
};

// Total order: more value, then fewer items, then smaller id sequence.
// Adding the same item to two sets preserves it, so the DP stays exact.
bool better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.order.size() != b.order.size()) return a.order.size() < b.order.size();
    return std::lexicographical_compare(a.order.begin(), a.order.end(), b.order.begin(), b.order.end());
}

}  // namespace

int integer_scale(double v) {
    if (!(v > 0.0)) return 1;
    // Guard against 0.305 * 100 = 30.500000000000004 style noise pushing ceil up.
    const double scaled = v * 100.0;
    const double rounded = std::round(scaled);
    const double snapped = std::abs(scaled - rounded) < 1e-9 ? rounded : scaled;
    return std::clamp(static_cast<int>(std::ceil(snapped)), 1, 100);
}

KnapsackSelection knapsack_01(std::span<const KnapsackItem> items, int capacity, int max_items) {
    if (capacity < 0) throw std::invalid_argument("knapsack capacity must be nonnegative");
    if (max_items < 1) throw std::invalid_argument("max_items must be at least 1");
    for (const auto& item : items) {
        if (item.value < 1 || item.weight < 1) {
            throw std::invalid_argument("knapsack item " + item.player_id + " needs value and weight >= 1");
        }
    }

    std::vector<std::size_t> sorted(items.size());
    std::iota(sorted.begin(), sorted.end(), std::size_t{0});
    std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        return items[a].player_id < items[b].player_id;
    });

    const int k_max = std::min<int>(max_items, static_cast<int>(items.size()));
    // best[k][c]: best set of at most k items with weight at most c.
    std::vector<std::vector<Candidate>> best(
        static_cast<std::size_t>(k_max) + 1, std::vector<Candidate>(static_cast<std::size_t>(capacity) + 1));

    for (std::size_t pos = 0; pos < sorted.size(); ++pos) {
        const auto& item = items[sorted[pos]];
        if (item.weight > capacity) continue;
        for (int k = k_max; k >= 1; --k) {
            for (int c = capacity; c >= item.weight; --c) {
                const Candidate& base = best[k - 1][c - item.weight];
                Candidate next{base.value + item.value, base.weight + item.weight, base.order};
                next.order.push_back(pos);
                if (better(next, best[k][c])) best[k][c] = std::move(next);
            }
        }
    }

    const Candidate& chosen = best[k_max][capacity];
    KnapsackSelection out;
    out.total_value = chosen.value;
    out.total_weight = chosen.weight;
    for (std::size_t pos : chosen.order) out.indices.push_back(sorted[pos]);
    return out;
}

}  // namespace fftrade
