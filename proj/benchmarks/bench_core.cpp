#include "pwb/bounds.hpp"
#include "pwb/objective.hpp"
#include "pwb/verify.hpp"

#include <benchmark/benchmark.h>

using namespace pwb;

namespace {

void BM_WeightedHump(benchmark::State& st) {
    const Exponent p(3.3);
    for (auto _ : st) benchmark::DoNotOptimize(weighted_hump(1.2, 1.8, 1, p, {}));
}
BENCHMARK(BM_WeightedHump);

void BM_EpMaximizer(benchmark::State& st) {
    const ZeroSequence tau = ZeroSequence::shifted_integers(0.1, static_cast<std::size_t>(st.range(0)));
    const Exponent p(5);
    for (auto _ : st) benchmark::DoNotOptimize(ep(tau, p));
}
BENCHMARK(BM_EpMaximizer)->Arg(5)->Arg(50);

void BM_EpTailCutoff(benchmark::State& st) {
    const ZeroSequence tau({0.7, 1.5, 2.3}, 1.0);
    QuadSettings s;
    s.tail_level_cutoff = st.range(0);
    for (auto _ : st) benchmark::DoNotOptimize(ep(tau, Exponent(3), s));
}
BENCHMARK(BM_EpTailCutoff)->Arg(500)->Arg(5000);

void BM_CpUpper(benchmark::State& st) {
    const double p = static_cast<double>(st.range(0)) / 10;
    for (auto _ : st) benchmark::DoNotOptimize(cp_upper(p));
}
BENCHMARK(BM_CpUpper)->Arg(30)->Arg(45);

void BM_RaySum(benchmark::State& st) {
    const ZeroSequence tau({0.7, 1.5, 2.3, 3.1}, 1.0);
    for (auto _ : st) benchmark::DoNotOptimize(ray_sum(tau, Regime::Low, Exponent(3)));
}
BENCHMARK(BM_RaySum);

void BM_LocalObjective(benchmark::State& st) {
    const Exponent p(3.5);
    for (auto _ : st) benchmark::DoNotOptimize(s_local(2.5, 2.0, 2, p, Regime::Low));
}
BENCHMARK(BM_LocalObjective);

void BM_AppendixCase(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(appendix_margin("case3a", 3, 3.7, 0.45));
}
BENCHMARK(BM_AppendixCase);

void BM_LemmaCheck(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(check_lemma("exchange-valley", 100, 1));
}
BENCHMARK(BM_LemmaCheck)->Unit(benchmark::kMillisecond);

void BM_GridSearch(benchmark::State& st) {
    OptimizerConfig cfg;
    cfg.n_explicit = 3;
    cfg.grid_step = 0.02;
    cfg.mode = st.range(0) ? SearchMode::Exhaustive : SearchMode::Ascent;
    for (auto _ : st) benchmark::DoNotOptimize(brute_force_sup(Exponent(3), {0.64, 2.0 / 3}, cfg));
}
BENCHMARK(BM_GridSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
