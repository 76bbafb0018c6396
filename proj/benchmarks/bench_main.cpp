#include <papermute/cycles.hpp>
#include <papermute/gf.hpp>
#include <papermute/pap.hpp>
#include <papermute/reference.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace papermute;
using i64 = std::int64_t;

// n = m * 2^k with m = 6, so the closed form sees large P while tracing walks all n points.
Pap sample(i64 n, i64 m) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    return Pap(reference::sample_triple(n, m, rng));
}

void BM_CycleTypeFormula(benchmark::State& state) {
    const Pap pap = sample(state.range(0), 6);
    for (auto _ : state) benchmark::DoNotOptimize(cycle_type(pap));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CycleTypeFormula)->Arg(96)->Arg(768)->Arg(6144)->Arg(49152)->Arg(393216)->Complexity();

void BM_CycleTypeTracing(benchmark::State& state) {
    const Pap pap = sample(state.range(0), 6);
    for (auto _ : state) benchmark::DoNotOptimize(reference::brute_cycle_type(reference::PermTable::from_pap(pap)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CycleTypeTracing)->Arg(96)->Arg(768)->Arg(6144)->Arg(49152)->Arg(393216)->Complexity();

void BM_LiftPoly(benchmark::State& state) {
    const i64 m = state.range(0);
    const auto field = gf::Field::make(997, 1);  // q - 1 = 996 = 2^2 * 3 * 83
    const auto theta = gf::find_primitive(field);
    std::mt19937_64 rng(1);
    const gf::LiftSpec spec(Pap(reference::sample_triple(996, m, rng)), field, theta);
    for (auto _ : state) benchmark::DoNotOptimize(gf::lift_poly(spec));
}
BENCHMARK(BM_LiftPoly)->Arg(2)->Arg(4)->Arg(12)->Arg(83);

void BM_TwoRuleLift(benchmark::State& state) {
    const auto field = gf::Field::make(5, 2, std::vector<i64>{-3, -1, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(gf::two_reducible_lift_poly(field, field.generator(), 3, {5, 7, 2, 8}));
}
BENCHMARK(BM_TwoRuleLift);

void BM_DiscreteLogTable(benchmark::State& state) {
    const auto field = gf::Field::make(state.range(0), 1);
    const auto theta = gf::find_primitive(field);
    for (auto _ : state) benchmark::DoNotOptimize(gf::DiscreteLog(field, theta));
}
BENCHMARK(BM_DiscreteLogTable)->Arg(101)->Arg(10007)->Arg(1000003);

void BM_DiscreteLogQuery(benchmark::State& state) {
    const auto field = gf::Field::make(state.range(0), 1);
    const gf::DiscreteLog log(field, gf::find_primitive(field));
    i64 x = 1;
    for (auto _ : state) {
        x = x % (field.q() - 1) + 1;
        benchmark::DoNotOptimize(log(field.element(x)));
    }
}
BENCHMARK(BM_DiscreteLogQuery)->Arg(101)->Arg(10007)->Arg(1000003);

}  // namespace

BENCHMARK_MAIN();
