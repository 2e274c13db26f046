#include <benchmark/benchmark.h>

#include <random>

#include "loco/exact_matrix.hpp"
#include "loco/ext_oracle.hpp"
#include "loco/findim.hpp"
#include "loco/koszul_cech.hpp"

using namespace loco;

namespace {

ExactMatrix random_matrix(FieldSpec f, std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<Vector> rows(n, Vector(n));
    for (auto& r : rows)
        for (auto& x : r) x = d(rng);
    return ExactMatrix::from_rows(f, n, rows);
}

const std::vector<Monomial> kMaxIdeal3 = {Monomial{1, 0, 0}, Monomial{0, 1, 0}, Monomial{0, 0, 1}};

}  // namespace

static void BM_RankRationals(benchmark::State& state) {
    auto m = random_matrix(FieldSpec::rationals(), static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankRationals)->Arg(16)->Arg(48);

static void BM_RankF2(benchmark::State& state) {
    auto m = random_matrix(FieldSpec::prime(2), static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankF2)->Arg(64)->Arg(256);

static void BM_LocalCohomologyK3(benchmark::State& state) {
    RingSpec r(FieldSpec::rationals(), 3);
    auto box = DegreeBox::cube(3, -4, 4);
    TableOptions o;
    o.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(local_cohomology(r, kMaxIdeal3, MonomialIdeal(3), box, o));
}
BENCHMARK(BM_LocalCohomologyK3)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_KoszulColimitK3(benchmark::State& state) {
    RingSpec r(FieldSpec::prime(2), 3);
    auto box = DegreeBox::cube(3, -3, 3);
    for (auto _ : state) benchmark::DoNotOptimize(koszul_colimit_cohomology(r, kMaxIdeal3, MonomialIdeal(3), box));
}
BENCHMARK(BM_KoszulColimitK3)->Unit(benchmark::kMillisecond);

static void BM_StableExtK2(benchmark::State& state) {
    RingSpec r(FieldSpec::rationals(), 2);
    MonomialIdeal ideal(2, {Monomial{2, 0}, Monomial{1, 1}, Monomial{0, 3}});
    auto box = DegreeBox::cube(2, -4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(stable_ext(r, ideal, MonomialIdeal(2), box));
}
BENCHMARK(BM_StableExtK2)->Unit(benchmark::kMillisecond);

static void BM_ExtKAGroup(benchmark::State& state) {
    auto a = group_algebra(cyclic_group_table(static_cast<int>(state.range(0))), FieldSpec::prime(2));
    for (auto _ : state) benchmark::DoNotOptimize(ext_k_A(a, 6));
}
BENCHMARK(BM_ExtKAGroup)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_ExteriorExtAlgebra(benchmark::State& state) {
    auto a = exterior_algebra(FieldSpec::rationals(), 1);
    for (auto _ : state) benchmark::DoNotOptimize(ext_algebra(a, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ExteriorExtAlgebra)->Arg(6)->Arg(12);
BENCHMARK_MAIN();
