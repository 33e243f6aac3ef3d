#include <benchmark/benchmark.h>

#include "ppbnb/bounding.hpp"
#include "ppbnb/cone_order.hpp"
#include "ppbnb/random.hpp"
#include "ppbnb/solver.hpp"

using namespace ppbnb;

namespace {

std::vector<Vector> random_points(std::size_t count, std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vector> pts(count, Vector(m));
    for (auto& p : pts) {
        for (auto& v : p) v = uniform01(rng);
    }
    return pts;
}

}  // namespace

static void BM_FilterNonEpsDominated(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 3, 7);
    const EpsParameter eps(0.75);
    for (auto _ : state) {
        auto idx = non_eps_dominated_indices(pts, eps);
        benchmark::DoNotOptimize(idx);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FilterNonEpsDominated)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

static void BM_LowerBound(benchmark::State& state) {
    const auto prob = get_problem("DEB2DK", {{"K", 4}, {"n", 3}});
    const ReferencePoints ref = sample_reference_points(prob, 1024, 1);
    const Box box = make_box({0.2, 0.3, 0.4}, {0.25, 0.35, 0.45});
    for (auto _ : state) {
        auto l = lipschitz_lower_bound(prob, box, ref);
        benchmark::DoNotOptimize(l);
    }
}
BENCHMARK(BM_LowerBound);

// Whole runs of a fixed number of iterations.
static void BM_SolveMop(benchmark::State& state) {
    const auto prob = get_problem("MOP");
    SolverConfig cfg;
    cfg.max_iterations = static_cast<std::size_t>(state.range(0));
    cfg.tol_eps = 1e-3;
    cfg.tol_delta = 1e-3;
    cfg.ub_mode = state.range(1) ? UpperBoundMode::Moea : UpperBoundMode::Midpoint;
    for (auto _ : state) {
        auto r = solve(prob, cfg);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_SolveMop)->Args({12, 0})->Args({12, 1})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
