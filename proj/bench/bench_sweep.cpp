// Serial reference kernels against their OpenMP counterparts.
// The thread count is the benchmark argument; 0 means the OpenMP default.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "ptcav/sweep.hpp"

using namespace ptcav;

namespace {

constexpr double pi = std::numbers::pi;

ModelParams base() {
    ModelParams p;
    p.n_sites = 50;
    p.layout = GainLossLayout::EndPair;
    p.kappa = 0.8;
    return p;
}

std::vector<double> grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

void BM_SweepPhiSerial(benchmark::State& state) {
    const auto g = grid(0.0, 2 * pi, 101);
    for (auto _ : state) benchmark::DoNotOptimize(reference::sweep_phi(base(), g));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}

void BM_SweepPhiParallel(benchmark::State& state) {
    const auto g = grid(0.0, 2 * pi, 101);
    SweepOptions opts;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_phi(base(), g, opts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}

void BM_CriticalSerial(benchmark::State& state) {
    const auto g = grid(pi / 2, 3 * pi / 2, 9);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::critical_curve(base(), g, TransitionKind::First, 5.0, 1e-3));
}

void BM_CriticalParallel(benchmark::State& state) {
    const auto g = grid(pi / 2, 3 * pi / 2, 9);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(critical_curve(base(), g, TransitionKind::First, 5.0, 1e-3, {}, threads));
}

}  // namespace

BENCHMARK(BM_SweepPhiSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepPhiParallel)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CriticalSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CriticalParallel)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
