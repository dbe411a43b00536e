#include <benchmark/benchmark.h>

#include "ghp/correspondence.hpp"
#include "ghp/diagnostics.hpp"
#include "ghp/distances.hpp"
#include "ghp/generators.hpp"
#include "ghp/ghp.hpp"
#include "ghp/tree_coding.hpp"

namespace {

void BM_ProkhorovExact(benchmark::State& state) {
    ghp::Rng rng(1);
    const auto s = ghp::random_space(rng, static_cast<std::size_t>(state.range(0)));
    const auto nu = ghp::random_measure(rng, s.size());
    for (auto _ : state) benchmark::DoNotOptimize(ghp::prokhorov_exact(s, s.measure(), nu).value);
}
BENCHMARK(BM_ProkhorovExact)->Arg(8)->Arg(32)->Arg(128);

void BM_CodeTree(benchmark::State& state) {
    ghp::Rng rng(2);
    const auto f = ghp::random_excursion(rng, static_cast<std::size_t>(state.range(0)), 8);
    for (auto _ : state) benchmark::DoNotOptimize(ghp::code_tree(f).space.size());
}
BENCHMARK(BM_CodeTree)->Arg(64)->Arg(256);

void BM_FourPoint(benchmark::State& state) {
    ghp::Rng rng(3);
    const auto t = ghp::code_tree(ghp::random_excursion(rng, static_cast<std::size_t>(state.range(0)), 8));
    for (auto _ : state) benchmark::DoNotOptimize(ghp::four_point_defect(t.space));
    state.counters["points"] = static_cast<double>(t.space.size());
}
BENCHMARK(BM_FourPoint)->Arg(64)->Arg(128)->Arg(200);

void BM_EvaluateObjective(benchmark::State& state) {
    ghp::Rng rng(4);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = ghp::random_space(rng, n), y = ghp::random_space(rng, n);
    std::vector<ghp::IndexPair> pairs{{x.root(), y.root()}};
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, i);
    const auto r = ghp::make_correspondence(x, y, pairs);
    for (auto _ : state) benchmark::DoNotOptimize(ghp::objective_terms(x, y, ghp::tight_gluing(x, y, r)).total());
}
BENCHMARK(BM_EvaluateObjective)->Arg(6)->Arg(32)->Arg(128);

void BM_GhpCompactSmall(benchmark::State& state) {
    ghp::Rng rng(5);
    const auto x = ghp::random_space(rng, 5), y = ghp::random_space(rng, 5);
    ghp::SearchConfig cfg;
    cfg.seed = 1;
    cfg.restarts = 4;
    cfg.iterations = 250;
    for (auto _ : state) benchmark::DoNotOptimize(ghp::ghp_compact(x, y, cfg).upper);
}
BENCHMARK(BM_GhpCompactSmall);

}  // namespace

BENCHMARK_MAIN();
