#include <benchmark/benchmark.h>

#include <random>

#include "phaselab/examples.hpp"
#include "phaselab/falsify.hpp"
#include "phaselab/frames.hpp"
#include "phaselab/poly.hpp"

using namespace phaselab;

namespace {

Mat<Rational> random_int_mat(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Mat<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = Rational(static_cast<long>(rng() % 21) - 10);
    return m;
}

void BM_exact_rank(benchmark::State& state) {
    Mat<Rational> m = random_int_mat(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_exact_rank)->Arg(8)->Arg(16)->Arg(32);

void BM_cp_enumeration(benchmark::State& state) {
    auto b = gen_rd_family(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(complement_property(*b.frame));
}
BENCHMARK(BM_cp_enumeration)->Arg(3)->Arg(5)->Arg(7);

void BM_sturm_f0(benchmark::State& state) {
    IntPoly u = specialize_x34(f0_dataset());
    for (auto _ : state) benchmark::DoNotOptimize(count_real_roots(u));
}
BENCHMARK(BM_sturm_f0);

void BM_falsifier_restarts(benchmark::State& state) {
    auto b = gen_r4_six_hyperplanes();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            edidin_numeric_falsify(*b.arrangement, static_cast<int>(state.range(0)), 7));
}
BENCHMARK(BM_falsifier_restarts)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
