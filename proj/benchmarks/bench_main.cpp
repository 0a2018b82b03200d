#include "ricefield/counting.hpp"
#include "ricefield/field.hpp"
#include "ricefield/max_density.hpp"
#include "ricefield/rice.hpp"

#include <benchmark/benchmark.h>

using namespace ricefield;

static void BM_grid_eval_1d(benchmark::State& state) {
    auto model = gaussian_model_1d();
    auto s = sample_field(model, static_cast<int>(state.range(0)), 42);
    int n = 2001;
    for (auto _ : state) {
        auto v = values_on_grid_1d(s, 0.0, 10.0 / (n - 1), n);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_grid_eval_1d)->Arg(256)->Arg(1024);

static void BM_grid_eval_2d(benchmark::State& state) {
    auto model = gaussian_model_2d();
    auto s = sample_field(model, static_cast<int>(state.range(0)), 42);
    for (auto _ : state) {
        auto g = grid_eval_2d(s, -1.0, -1.0, 0.05, 41, 41);
        benchmark::DoNotOptimize(g.value.data());
    }
    state.SetItemsProcessed(state.iterations() * 41 * 41);
}
BENCHMARK(BM_grid_eval_2d)->Arg(256)->Arg(1024);

static void BM_count_level_roots_1d(benchmark::State& state) {
    auto model = gaussian_model_1d();
    auto s = sample_field(model, 256, 43);
    Domain dom = Domain::interval(10.0);
    for (auto _ : state) {
        auto r = count_level_roots_1d(s, dom, 1.0, 0.005);
        benchmark::DoNotOptimize(r.count());
    }
}
BENCHMARK(BM_count_level_roots_1d);

static void BM_count_gradient_roots_2d(benchmark::State& state) {
    auto model = gaussian_model_2d();
    auto s = sample_field(model, 256, 44);
    Domain dom = Domain::unit_disc();
    for (auto _ : state) {
        auto r = count_gradient_roots_2d(s, dom, Vec2{0, 0}, 0.05);
        benchmark::DoNotOptimize(r.count());
    }
}
BENCHMARK(BM_count_gradient_roots_2d);

static void BM_disc_I1(benchmark::State& state) {
    DiscBoundConstants consts(1.0 / 3.141592653589793, 4.0 / 3.141592653589793);
    for (auto _ : state) {
        double v = disc_I1(consts, 1.0, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_disc_I1)->Arg(64)->Arg(128)->Arg(256);

static void BM_conditional_det_moment(benchmark::State& state) {
    auto model = gaussian_model_2d();
    auto law = build_conditional_law(model, 1.0);
    for (auto _ : state) {
        auto est = conditional_det_moment(law, DetKind::delta2,
                                          state.range(0), 7);
        benchmark::DoNotOptimize(est.value);
    }
}
BENCHMARK(BM_conditional_det_moment)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
