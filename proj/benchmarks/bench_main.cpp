#include "degpar/special.hpp"
#include "degpar/spectrum.hpp"
#include "degpar/verify.hpp"

#include <benchmark/benchmark.h>

using namespace degpar;

static void BM_BesselJ(benchmark::State& state) {
    const BesselOrder order(1.0 / 3.0);
    const double x = static_cast<double>(state.range(0)) + 0.37;
    for (auto _ : state) benchmark::DoNotOptimize(bessel_j(order, x));
}
BENCHMARK(BM_BesselJ)->Arg(1)->Arg(10)->Arg(15)->Arg(40);

static void BM_BesselRoots(benchmark::State& state) {
    const BesselOrder order(0.25);
    for (auto _ : state) benchmark::DoNotOptimize(bessel_roots(order, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BesselRoots)->Arg(5)->Arg(20);

static void BM_Shooting(benchmark::State& state) {
    const BoundaryKind bc{EdgeCondition::Dirichlet, EdgeCondition::Neumann};
    for (auto _ : state) benchmark::DoNotOptimize(shooting_eigenvalues(1.0, bc, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Shooting)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_ResidualGrid(benchmark::State& state) {
    ProblemParams params;
    params.alpha = {0.5, 0.0};
    const SolutionField field = build_mode_solution(params, 1, 1, 2);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pde_residual_analytic(field, GridSpec::cube(n)));
}
BENCHMARK(BM_ResidualGrid)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

static void BM_EnergyIdentity(benchmark::State& state) {
    ProblemParams params;
    params.alpha = {0.5, 0.0};
    const SolutionField field = build_mode_solution(params, 1, 1, 2);
    const int panels = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(energy_identity(field, panels));
}
BENCHMARK(BM_EnergyIdentity)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
