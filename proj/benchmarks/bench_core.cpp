#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "filmsim/full_domain.hpp"
#include "filmsim/gaptooth.hpp"
#include "filmsim/initial_condition.hpp"
#include "filmsim/integrator.hpp"
#include "filmsim/run_config.hpp"
#include "filmsim/stability.hpp"
#include "filmsim/tridiagonal.hpp"

using namespace filmsim;
using std::numbers::pi;

/// Semidiscrete right-hand side on the reference full-domain grid.
static void BM_FullRhs(benchmark::State& state) {
    RunConfig cfg;
    cfg.n_cells = static_cast<int>(state.range(0));
    const FlowField f = make_initial_full(cfg);
    FlowField dfdt = f;
    for (auto _ : state) {
        full_rhs(f, cfg.model, dfdt);
        benchmark::DoNotOptimize(dfdt.h.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_cells);
}
BENCHMARK(BM_FullRhs)->Arg(240)->Arg(960);

/// Coupled patch right-hand side in the reference configuration.
static void BM_GaptoothRhs(benchmark::State& state) {
    RunConfig cfg;
    const PatchLayout lay = build_layout(cfg.m, cfg.D, cfg.r, cfg.n);
    const CoupledState s = make_initial_gaptooth(cfg, lay);
    std::vector<double> dydt(s.values.size());
    for (auto _ : state) {
        gaptooth_rhs(s.values, lay, cfg.model, cfg.coupling, dydt);
        benchmark::DoNotOptimize(dydt.data());
    }
    state.SetItemsProcessed(state.iterations() * lay.dof_count());
}
BENCHMARK(BM_GaptoothRhs);

/// Cyclic Thomas solve at full-grid size.
static void BM_CyclicTridiagonal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> lower(n, -1.0), diag(n, 4.0), upper(n, -1.0), rhs(n, 1.0);
    for (auto _ : state) {
        auto x = solve_cyclic_tridiagonal(lower, diag, upper, rhs);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_CyclicTridiagonal)->Arg(120)->Arg(512);

/// One growth-rate evaluation (matrix assembly + companion eigensolve).
static void BM_CharacteristicRoots(benchmark::State& state) {
    double k = 0.0;
    for (auto _ : state) {
        k = k < 50.0 ? k + 0.01 : 0.0;
        auto g = characteristic_roots(15.0, 0.0, k, 0.5);
        benchmark::DoNotOptimize(g.lambdas.data());
    }
}
BENCHMARK(BM_CharacteristicRoots);

/// Short stiff integration of the coupled patch system.
static void BM_IntegrateGaptooth(benchmark::State& state) {
    RunConfig cfg;
    const PatchLayout lay = build_layout(cfg.m, cfg.D, cfg.r, cfg.n);
    const CoupledState s0 = make_initial_gaptooth(cfg, lay);
    const RhsFn rhs = [&](double, std::span<const double> y, std::span<double> dydt) {
        gaptooth_rhs(y, lay, cfg.model, cfg.coupling, dydt);
    };
    for (auto _ : state) {
        auto result = integrate(rhs, s0.values, 0.0, 1.0, cfg.integrator);
        benchmark::DoNotOptimize(result.y.data());
    }
}
BENCHMARK(BM_IntegrateGaptooth)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
