// Timings of the hot paths: sphere quadrature, the b-equation and period reduction.

#include "aquant/monodromy.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace aquant;

namespace {

void BM_SphereIntegral(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = Atlas::sphere2();
    TwoFormField w = area_form(s, 1.0);
    SphereGrid g = sample_map(*s, random_sphere_map(s, 1), n, n, GridMarker::based);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_over_sphere(w, g).value);
    state.SetComplexityN(n * n);
}
BENCHMARK(BM_SphereIntegral)->Arg(50)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SolveB(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = Atlas::sphere2();
    auto t = tangent_algebroid(s);
    APathFamily fam = tangent_family(t, sample_map(*s, random_sphere_map(s, 2), n, n, GridMarker::based));
    const Connection flat = Connection::flat(t);
    for (auto _ : state) benchmark::DoNotOptimize(solve_b(fam, flat).endpoint_defect);
    state.SetComplexityN(n * n);
}
BENCHMARK(BM_SolveB)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Monodromy(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = Atlas::sphere2();
    Cochain c = cochain_from_form(tangent_algebroid(s), area_form(s, 1.0));
    SphereGrid g = sample_map(*s, random_sphere_map(s, 3), n, n, GridMarker::based);
    for (auto _ : state) benchmark::DoNotOptimize(monodromy_r(c, g).value);
}
BENCHMARK(BM_Monodromy)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_PeriodReduction(benchmark::State& state) {
    std::vector<double> gens;
    for (int k = 1; k <= state.range(0); ++k) gens.push_back(k % 2 ? 0.3 * k : std::sqrt(2.0) * k);
    for (auto _ : state) benchmark::DoNotOptimize(reduce_period_group(gens).classification);
}
BENCHMARK(BM_PeriodReduction)->Arg(2)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
