#include <benchmark/benchmark.h>

#include "potrec/helmholtz.hpp"
#include "potrec/measurement.hpp"
#include "potrec/reconstruction.hpp"

using namespace potrec;

namespace {

void BM_Factorize(benchmark::State& state) {
    const Grid g = Grid::build(static_cast<int>(state.range(0)), 1.0, 0.7);
    for (auto _ : state) {
        const HelmholtzSystem sys(g, nullptr, 15.2);
        benchmark::DoNotOptimize(&sys);
    }
    state.counters["unknowns"] = static_cast<double>(g.interior_count());
}
BENCHMARK(BM_Factorize)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Measure(benchmark::State& state) {
    const Grid g = Grid::build(static_cast<int>(state.range(0)), 1.0, 0.7);
    const BoundaryDiscretization b = boundary_nodes(g, 256);
    const PotentialField c = PotentialField::sample(g, case1_potential());
    const MeasurementSynthesizer s(g, c, b, 15.2, 0.0);
    const WaveVectorPair pair = make_wave_pair({-1.4, 8.3}, 15.2);
    for (auto _ : state) benchmark::DoNotOptimize(s.measure(pair));
}
BENCHMARK(BM_Measure)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_NeumannTrace(benchmark::State& state) {
    const Grid g = Grid::build(200, 1.0, 0.7);
    const BoundaryDiscretization b = boundary_nodes(g, static_cast<int>(state.range(0)));
    const HelmholtzSystem sys(g, nullptr, 15.2);
    const WaveVectorPair pair = make_wave_pair({6.0, 0.0}, 15.2);
    const ComplexField u = sys.solve([&](Vec2 x) { return eval_probe(pair, Probe::U0, x); });
    for (auto _ : state) benchmark::DoNotOptimize(neumann_trace(u, b));
}
BENCHMARK(BM_NeumannTrace)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_Synthesis(benchmark::State& state) {
    const double k = 15.2;
    const SamplingPlan plan = build_sampling(9, 1.0, 50.0, 0.2, k);
    CoefficientTable t;
    t.k = k;
    t.total_lines = plan.total_lines();
    for (std::size_t i = 0; i < plan.size() && plan.point(i).kappa <= 2.0 * k + 1e-9; ++i) {
        t.entries.push_back({plan.point(i), cplx(1.0, 0.5), std::nullopt});
        t.kappa_limit = plan.point(i).kappa;
    }
    const Grid g = Grid::build(static_cast<int>(state.range(0)), 1.0, 0.7);
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(t, plan, 2.0 * k, g, 1));
    state.counters["modes"] = static_cast<double>(t.entries.size());
}
BENCHMARK(BM_Synthesis)->Arg(90)->Arg(180)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
