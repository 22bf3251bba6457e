// bench_kernels: serial reference vs OpenMP kernels on the workloads the tools run

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "dfsqt/kernels.hpp"
#include "dfsqt/metrics.hpp"
#include "dfsqt/optimizer.hpp"

namespace {

using namespace dfsqt;

kernels::BlochFn pipeline() {
    const auto res = protocol::ResourceSpec::pure_from_concurrence(0.8);
    const auto fac = noise::factors_at(noise::kDefaultAliceNoise, noise::NoiseParams{0.1, 0.05, 0.0, 1.0}, 5.0);
    return metrics::pipeline_fidelity(res, fac, protocol::Strategy::RetainPsiOnly, metrics::Convention::Physical);
}

kernels::Exec exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? kernels::Exec::Serial : kernels::Exec::Parallel;
}

void BM_BlochQuadrature(benchmark::State& state) {
    const auto f = pipeline();
    const int n = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::bloch_quadrature(f, n, n, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_MonteCarlo(benchmark::State& state) {
    const auto f = pipeline();
    const auto n = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::bloch_montecarlo(f, n, 1, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_FiniteTemperatureSweep(benchmark::State& state) {
    optimizer::TimingProblem p;
    p.resource = protocol::ResourceSpec::werner_from_concurrence(0.8);
    p.bob_noise = noise::NoiseParams{0.1, 0.05, 0.5, 1.0};  // T > 0 forces quadrature per τ
    p.tau_lo = 0.0;
    p.tau_hi = 12.0 * std::numbers::pi;
    const int n = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(optimizer::sweep(p, n, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK(BM_BlochQuadrature)->ArgNames({"omp", "n"})->ArgsProduct({{0, 1}, {64, 128}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo)->ArgNames({"omp", "n"})->ArgsProduct({{0, 1}, {100000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FiniteTemperatureSweep)->ArgNames({"omp", "n"})->ArgsProduct({{0, 1}, {200}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
