#include <benchmark/benchmark.h>

#include "emptyspace/analytic.hpp"
#include "emptyspace/estimator.hpp"
#include "emptyspace/geometry.hpp"
#include "emptyspace/models.hpp"
#include "emptyspace/orderings.hpp"
#include "emptyspace/rng.hpp"

using namespace emptyspace;

namespace {

GaugeBody const kBall = GaugeBody::ball(1.0, 2);

void BM_ContactQuery(benchmark::State& state)
{
    auto const spec = boolean_spec(static_cast<double>(state.range(0)),
                                   ScalarLaw::degenerate(0.1));
    auto const scene = sample_scene(spec, 1);
    ContactIndex const index(scene, kBall, 2.0);
    RandomStream rng(2, 0);
    for (auto _ : state)
    {
        Vec const x{{20 * rng.uniform(), 20 * rng.uniform()}};
        benchmark::DoNotOptimize(index.query(x));
    }
}
BENCHMARK(BM_ContactQuery)->Arg(1)->Arg(10);

void BM_EstimateF(benchmark::State& state)
{
    auto const scene = sample_scene(boolean_spec(1.0, ScalarLaw::degenerate(0.5)), 1);
    EstimatorConfig cfg;
    cfg.t_grid = linear_grid(0, 1.5, 40);
    cfg.resolution = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_F(scene, kBall, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_EstimateF)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_NeymanScottQuadrature(benchmark::State& state)
{
    auto const t = linear_grid(0.05, 5, 50);
    for (auto _ : state)
        benchmark::DoNotOptimize(neyman_scott_hazard(
            0.05, CountingLaw::poisson(2), ClusterPointLaw::gaussian(0.5), kBall, t,
            DirectionSectors::all()));
}
BENCHMARK(BM_NeymanScottQuadrature)->Unit(benchmark::kMillisecond);

void BM_LgGridCheck(benchmark::State& state)
{
    LgOptions o;
    o.shortcuts = false;
    auto const a = CountingLaw::negative_binomial(0.6, 2.0);
    auto const b = CountingLaw::compound(CountingLaw::poisson(1), CountingLaw::binomial(3, 0.4));
    for (auto _ : state)
        benchmark::DoNotOptimize(lg_order_check(a, b, o));
}
BENCHMARK(BM_LgGridCheck);

}  // namespace
BENCHMARK_MAIN();
