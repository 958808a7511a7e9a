#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "projdyn/ergodic.hpp"
#include "projdyn/green.hpp"
#include "projdyn/measures.hpp"
#include "projdyn/pesin_graph.hpp"
#include "projdyn/random.hpp"
#include "projdyn/siegel.hpp"
#include "projdyn/slice.hpp"

using namespace projdyn;

namespace {

std::vector<ProjPoint> random_points(std::size_t n) {
    Rng rng(11);
    std::vector<ProjPoint> out;
    for (std::size_t k = 0; k < n; ++k) out.emplace_back(Lift{rng.complex_normal(), rng.complex_normal(), rng.complex_normal()});
    return out;
}

void BM_green(benchmark::State& state) {
    const GreenEvaluator ge(siegel_product_map(golden_mean()), static_cast<int>(state.range(0)));
    const auto pts = random_points(1024);
    std::size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(ge(pts[k++ % pts.size()]));
}
BENCHMARK(BM_green)->Arg(10)->Arg(25);

void BM_preimages(benchmark::State& state) {
    const auto f = siegel_product_map(golden_mean());
    const auto pts = random_points(1024);
    std::size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(preimages(f, pts[k++ % pts.size()]));
}
BENCHMARK(BM_preimages);

void BM_slice(benchmark::State& state) {
    const GreenEvaluator ge(siegel_product_map(golden_mean()), 25);
    const Curve line{{{0.3, 0.0, 1.0}, {0.0, 1.0, 0.0}}, 0};
    for (auto _ : state) benchmark::DoNotOptimize(line_slice_density(ge, line, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_slice)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_graph_transform(benchmark::State& state) {
    const auto g = LocalDiagonalMap::with_coefficient_bound(2.0, 0.5, BivariatePolynomial({{2, 0, 0.05}}),
                                                            BivariatePolynomial({{1, 1, 0.05}}), 1.0);
    const auto graph = LipschitzGraph::sample(DiscMesh(0.0, 0.5, static_cast<int>(state.range(0))),
                                              [](cplx x) { return 0.2 * x + 0.05 * x * x; });
    for (auto _ : state) benchmark::DoNotOptimize(graph_transform(g, graph));
}
BENCHMARK(BM_graph_transform)->Arg(9)->Arg(30)->Unit(benchmark::kMicrosecond);

void BM_entropy(benchmark::State& state) {
    MuSamplerOptions mo;
    mo.n_points = static_cast<std::size_t>(state.range(0));
    const auto mu = sample_mu(squaring_map(), mo);
    EntropyOptions o;
    o.n = 8;
    o.epsilon = 0.05;
    o.n_centers = 50;
    for (auto _ : state) benchmark::DoNotOptimize(brin_katok_entropy(squaring_map(), mu, o));
}
BENCHMARK(BM_entropy)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
