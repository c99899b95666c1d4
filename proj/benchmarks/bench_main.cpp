#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "metriq/abelian.hpp"
#include "metriq/cyclotomic.hpp"
#include "metriq/metric.hpp"
#include "metriq/pointed.hpp"
#include "metriq/qscalars.hpp"

namespace {

using metriq::MetricGroup;

// q(x) = zeta_{2n}^{a x^2} on Z_n (a*n even).
MetricGroup cyclic_form(std::int64_t n, std::int64_t a) {
    std::int64_t mod = 2 * n;
    std::vector<std::int64_t> q(static_cast<std::size_t>(n));
    for (std::int64_t x = 0; x < n; ++x)
        q[static_cast<std::size_t>(x)] = (((a * x % mod) * x) % mod + mod) % mod;
    return metriq::make_metric_group({n}, q);
}

// q((x,y)) = zeta_n^{x y} on Z_n x Z_n.
MetricGroup hyperbolic_form(std::int64_t n) {
    std::int64_t mod = 2 * n;
    std::vector<std::int64_t> q(static_cast<std::size_t>(n * n));
    for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y)
            q[static_cast<std::size_t>(x * n + y)] = (2 * x * y) % mod;
    return metriq::make_metric_group({n, n}, q);
}

void BM_gauss_sqrt(benchmark::State& state) {
    const std::int64_t p = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::gauss_sqrt(p));
}
BENCHMARK(BM_gauss_sqrt)->Arg(5)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_even_braiding_scalar(benchmark::State& state) {
    const std::int64_t p = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::even_braiding_scalar(p));
}
BENCHMARK(BM_even_braiding_scalar)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_gauss_sum(benchmark::State& state) {
    MetricGroup m = hyperbolic_form(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::gauss_sum(m));
}
BENCHMARK(BM_gauss_sum)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_isotropic_subgroups(benchmark::State& state) {
    MetricGroup m = hyperbolic_form(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::isotropic_subgroups(m));
}
BENCHMARK(BM_isotropic_subgroups)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_condense(benchmark::State& state) {
    MetricGroup m = hyperbolic_form(12);
    metriq::Subgroup h = metriq::subgroup_generated(m.group, {{4, 0}});
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::condense(m, h));
}
BENCHMARK(BM_condense)->Unit(benchmark::kMillisecond);

void BM_build_category(benchmark::State& state) {
    MetricGroup m = hyperbolic_form(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::build_category(m));
}
BENCHMARK(BM_build_category)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_build_algebra(benchmark::State& state) {
    MetricGroup m = hyperbolic_form(4);
    metriq::PointedCategory cat = metriq::build_category(m);
    metriq::Subgroup h = metriq::subgroup_generated(m.group, {{1, 0}});
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::build_algebra(cat, h));
}
BENCHMARK(BM_build_algebra)->Unit(benchmark::kMillisecond);

void BM_verify_frobenius(benchmark::State& state) {
    MetricGroup m = hyperbolic_form(4);
    metriq::PointedCategory cat = metriq::build_category(m);
    metriq::CondensationAlgebra alg =
        metriq::build_algebra(cat, metriq::subgroup_generated(m.group, {{1, 0}}));
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::verify_frobenius(alg));
}
BENCHMARK(BM_verify_frobenius)->Unit(benchmark::kMillisecond);

void BM_witt_equal(benchmark::State& state) {
    MetricGroup a = cyclic_form(8, 1);
    MetricGroup b = cyclic_form(8, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::witt_equal(a, b));
}
BENCHMARK(BM_witt_equal)->Unit(benchmark::kMillisecond);

void BM_anisotropic_kernel(benchmark::State& state) {
    MetricGroup m = hyperbolic_form(8);
    for (auto _ : state)
        benchmark::DoNotOptimize(metriq::anisotropic_kernel(m));
}
BENCHMARK(BM_anisotropic_kernel)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
