#include <benchmark/benchmark.h>

#include "flexstor/csv.hpp"
#include "flexstor/decomposition.hpp"
#include "flexstor/smartmeter.hpp"
#include "flexstor/sweep.hpp"
#include "flexstor/synth.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>

using namespace flexstor;

namespace {

Dataset year_dataset() {
    SyntheticSpec spec;
    spec.length = 35040;
    spec.seed = 7;
    spec.load = {WaveKind::sinusoid, 56400.0, 9000.0, 1440.0, 0.0};
    spec.solar = {WaveKind::sinusoid, 4600.0, 4600.0, 1440.0, -1.5707963};
    spec.wind_onshore = {WaveKind::noise, 11500.0, 11000.0, 1440.0, 0.0};
    spec.wind_offshore = {WaveKind::noise, 2800.0, 2500.0, 1440.0, 0.0};
    return synthesize(spec);
}

void BM_decompose_year(benchmark::State& state) {
    const Dataset d = year_dataset();
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose(d.load()));
    }
}
BENCHMARK(BM_decompose_year);

void BM_simulate_year(benchmark::State& state) {
    const Dataset d = year_dataset();
    const Decomposition demand = decompose(d.load());
    const PowerSeries vol =
        scale_to_demand(total_volatile(d), demand.average_mw);
    ScenarioConfig cfg;
    cfg.model = SurplusModel{SurplusKind::constant_scaling, 0.5, 2.0, 0.0};
    cfg.tau = std::chrono::minutes(24 * 60);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            simulate(demand.cumulative_total, vol, nullptr, cfg));
    }
    state.SetItemsProcessed(state.iterations() * 35040);
}
BENCHMARK(BM_simulate_year);

void BM_simulate_year_low_tanh(benchmark::State& state) {
    const Dataset d = year_dataset();
    const Decomposition demand = decompose(d.load());
    const PowerSeries vol =
        scale_to_demand(total_volatile(d), demand.average_mw);
    ScenarioConfig cfg;
    cfg.model = SurplusModel{SurplusKind::low_output_tanh, 0.5, 2.0, 0.0};
    cfg.tau = std::chrono::minutes(24 * 60);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            simulate(demand.cumulative_total, vol, nullptr, cfg));
    }
    state.SetItemsProcessed(state.iterations() * 35040);
}
BENCHMARK(BM_simulate_year_low_tanh);

void BM_sweep_cell_row(benchmark::State& state) {
    const Dataset d = year_dataset();
    const ScenarioEngine engine = ScenarioEngine::from_dataset(
        d, SurplusModel{SurplusKind::constant_scaling, 0.0, 2.0, 0.0});
    std::vector<std::chrono::minutes> taus;
    for (int h = 0; h <= 12; ++h) taus.emplace_back(60 * h);
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.surface({0.5}, taus));
    }
}
BENCHMARK(BM_sweep_cell_row);

void BM_parse_year_csv(benchmark::State& state) {
    const auto path =
        std::filesystem::temp_directory_path() / "flexstor_bench_year.csv";
    write_dataset_csv(year_dataset(), path);
    for (auto _ : state) {
        benchmark::DoNotOptimize(read_dataset_csv(path));
    }
}
BENCHMARK(BM_parse_year_csv);

} // namespace

BENCHMARK_MAIN();
