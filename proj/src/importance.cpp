#include "fftrade/importance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

namespace fftrade {

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::vector<std::string> effective_rank_order(const ModelImportanceProfile& p) {
    if (!p.rank_order.empty()) return p.rank_order;
    std::vector<std::string> order;
    for (const auto& [name, w] : p.importances) order.push_back(name);
    std::stable_sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        return p.importances.at(a) > p.importances.at(b);
    });
    return order;
}

}  // namespace

void LabeledDataset::validate() const {
    if (rows.size() != labels.size()) throw std::invalid_argument("rows and labels differ in length");
}

double permutation_importance(const DatasetScorer& score, const LabeledDataset& data,
                              const std::string& feature, int repeats, std::uint64_t seed) {
    data.validate();
    if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    if (data.rows.size() < 2) throw std::invalid_argument("permutation importance needs at least 2 rows");

    std::vector<double> column;
    column.reserve(data.rows.size());
    for (const auto& row : data.rows) {
        auto it = row.find(feature);
        if (it == row.end()) throw std::invalid_argument("feature '" + feature + "' missing from a row");
        column.push_back(it->second);
    }

    const double baseline = score(data);
    std::mt19937_64 rng(splitmix64(seed ^ fnv1a(feature)));
    LabeledDataset shuffled = data;
    double drop = 0.0;
    for (int k = 0; k < repeats; ++k) {
        std::vector<double> permuted = column;
        std::shuffle(permuted.begin(), permuted.end(), rng);
        for (std::size_t r = 0; r < permuted.size(); ++r) shuffled.rows[r][feature] = permuted[r];
        // Accumulate differences so an unchanged score yields exactly zero.
        drop += baseline - score(shuffled);
    }
    return drop / repeats;
}

std::map<std::string, double> permutation_importances(const DatasetScorer& score,
                                                      const LabeledDataset& data,
                                                      std::span<const std::string> features,
                                                      int repeats, std::uint64_t seed,
                                                      Execution exec) {
    std::vector<double> out(features.size(), 0.0);
    std::vector<std::exception_ptr> errors(features.size());
    const long n = static_cast<long>(features.size());

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = permutation_importance(score, data, features[i], repeats, seed);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::map<std::string, double> result;
    for (std::size_t i = 0; i < features.size(); ++i) result[features[i]] = out[i];
    return result;
}

double tier_boost(double importance, double tier_accuracy) {
    if (!(tier_accuracy >= 0.0 && tier_accuracy <= 1.0)) {
        throw std::invalid_argument("tier accuracy must be in [0,1]");
    }
    return 0.5 * std::exp(tier_accuracy * importance) +
           0.5 * std::tan(tier_accuracy) * importance + importance;
}

std::vector<double> normalize_importances(std::span<const double> boosted) {
    const double total = std::accumulate(boosted.begin(), boosted.end(), 0.0);
    if (!(total > 0.0)) throw std::invalid_argument("importances sum to zero; cannot normalize");
    std::vector<double> out;
    out.reserve(boosted.size());
    for (double v : boosted) out.push_back(v / total);
    return out;
}

std::map<std::string, double> combine_tiers(std::span<const TierImportance> tiers) {
    std::map<std::string, double> boosted;
    for (const auto& tier : tiers) {
        for (const auto& [name, x] : tier.importances) boosted[name] += tier_boost(x, tier.accuracy);
    }
    std::vector<double> values;
    for (const auto& [name, v] : boosted) values.push_back(v);
    const auto normalized = normalize_importances(values);
    std::size_t i = 0;
    for (auto& [name, v] : boosted) v = normalized[i++];
    return boosted;
}

std::map<std::string, double> ensemble_weights(std::span<const ModelImportanceProfile> profiles,
                                               std::span<const ModelDiversity> stats) {
    if (profiles.empty()) throw std::invalid_argument("ensemble needs at least one model");
    if (profiles.size() != stats.size()) throw std::invalid_argument("one diversity record per model required");

    double acc_total = 0.0, rank_total = 0.0, var_total = 0.0;
    for (const auto& s : stats) {
        acc_total += s.accuracy;
        rank_total += s.avg_rank_diff;
        var_total += s.variance;
    }
    // A zero denominator drops that term rather than dividing by zero.
    auto share = [](double part, double total) { return total > 0.0 ? part / total : 0.0; };

    std::map<std::string, double> pred;
    for (std::size_t m = 0; m < profiles.size(); ++m) {
        const double coeff = share(stats[m].accuracy, acc_total) +
                             share(stats[m].avg_rank_diff, rank_total) +
                             share(stats[m].variance, var_total);
        for (const auto& [name, p] : profiles[m].importances) pred[name] += coeff * p;
    }
    return pred;
}

double rank_diff_pct(std::span<const std::string> ranks_a, std::span<const std::string> ranks_b) {
    if (ranks_a.size() != ranks_b.size()) throw std::invalid_argument("rankings cover different feature sets");
    std::map<std::string, long> pos_b;
    for (std::size_t i = 0; i < ranks_b.size(); ++i) pos_b.emplace(ranks_b[i], static_cast<long>(i));
    if (pos_b.size() != ranks_b.size()) throw std::invalid_argument("ranking contains duplicates");

    long total = 0;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < ranks_a.size(); ++i) {
        auto it = pos_b.find(ranks_a[i]);
        if (it == pos_b.end() || !seen.insert(ranks_a[i]).second) {
            throw std::invalid_argument("rankings cover different feature sets");
        }
        total += std::labs(static_cast<long>(i) - it->second);
    }
    const long n = static_cast<long>(ranks_a.size());
    const long max_rank_diff = n * n / 2;
    return max_rank_diff == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(max_rank_diff);
}

double avg_rank_diff(double vs_classical, double vs_sme) { return 0.5 * vs_classical + 0.5 * vs_sme; }

double importance_variance(std::span<const double> importances) {
    if (importances.empty()) throw std::invalid_argument("variance of an empty importance list");
    const double n = static_cast<double>(importances.size());
    const double mean = std::accumulate(importances.begin(), importances.end(), 0.0) / n;
    double ss = 0.0;
    for (double p : importances) ss += (p - mean) * (p - mean);
    return ss / n;
}

std::string DiversityTriple::render() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.2f%%@%.2f%%@%.3f", accuracy * 100.0, avg_rank_diff * 100.0,
                  importance_variance);
    return buf;
}

DiversityTriple diversity_triple(double accuracy, double avg_rank_diff_value, double variance) {
    return {accuracy, avg_rank_diff_value, variance};
}

std::vector<DiversityRow> diversity_report(std::span<const ModelImportanceProfile> profiles) {
    // Best-accuracy profile per compute mode serves as that paradigm's reference.
    std::map<ComputeMode, const ModelImportanceProfile*> best;
    for (const auto& p : profiles) {
        auto& slot = best[p.compute_mode];
        if (slot == nullptr || p.accuracy > slot->accuracy) slot = &p;
    }

    std::vector<DiversityRow> rows;
    for (const auto& p : profiles) {
        const auto order = effective_rank_order(p);
        double diff_sum = 0.0;
        int refs = 0;
        for (const auto& [mode, ref] : best) {
            if (mode == p.compute_mode) continue;
            diff_sum += rank_diff_pct(order, effective_rank_order(*ref));
            ++refs;
        }
        std::vector<double> weights;
        for (const auto& [name, w] : p.importances) weights.push_back(w);
        rows.push_back({p.model_id, p.compute_mode,
                        diversity_triple(p.accuracy, refs ? diff_sum / refs : 0.0,
                                         weights.empty() ? 0.0 : importance_variance(weights))});
    }
    return rows;
}

}  // namespace fftrade
