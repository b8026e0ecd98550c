// Serial vs OpenMP timings for the three parallel kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "fftrade/importance.hpp"
#include "fftrade/sheet.hpp"
#include "fftrade/synthetic.hpp"
#include "fftrade/trade_engine.hpp"

using namespace fftrade;

namespace {

Execution exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

const League& league() {
    static const League l = synthetic_league({});
    return l;
}

BatchInputs batch_inputs() {
    BatchInputs in;
    in.players = league().players;
    in.league = league();
    in.profiles = synthetic_profiles(7);
    in.week = league().rules.current_week;
    return in;
}

const std::vector<ValuationSheet>& sheets() {
    static const auto s = batch_valuate(batch_inputs(), Execution::parallel).sheets;
    return s;
}

void BM_BatchValuate(benchmark::State& state) {
    const auto in = batch_inputs();
    for (auto _ : state) benchmark::DoNotOptimize(batch_valuate(in, exec_of(state)));
}
BENCHMARK(BM_BatchValuate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GenerateTrades(benchmark::State& state) {
    const auto& s = sheets();
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_trades(league(), "T1", {}, s, {}, exec_of(state)));
    }
}
BENCHMARK(BM_GenerateTrades)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PermutationImportance(benchmark::State& state) {
    const auto features = extract_features(league().players, Execution::parallel);
    LabeledDataset data;
    std::mt19937_64 rng(11);
    for (const auto& [id, f] : features) {
        data.rows.push_back(f);
        data.labels.push_back(f.at("projection_valuation") + 0.2 * std::generate_canonical<double, 53>(rng) > 0.6);
    }
    // A deliberately slow stump ensemble so each shuffle costs real work.
    const DatasetScorer score = [](const LabeledDataset& d) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < d.rows.size(); ++i) {
            double vote = 0.0;
            for (int k = 0; k < 200; ++k) {
                vote += d.rows[i].at("projection_valuation") > 0.3 + 0.002 * k ? 1.0 : 0.0;
                vote += d.rows[i].at("percent_owned") > 0.5 ? 0.1 : 0.0;
            }
            hits += (vote > 110.0) == (d.labels[i] == 1);
        }
        return static_cast<double>(hits) / static_cast<double>(d.rows.size());
    };
    const auto& names = feature_registry();
    for (auto _ : state) {
        benchmark::DoNotOptimize(permutation_importances(score, data, names, 5, 42, exec_of(state)));
    }
}
BENCHMARK(BM_PermutationImportance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
