// Microbenchmarks for the hot paths: sorting, crowding, hypervolume,
// problem evaluation and a whole generation step.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "llmoea/core.hpp"
#include "llmoea/llm_operator.hpp"
#include "llmoea/metrics.hpp"
#include "llmoea/nsga2.hpp"
#include "llmoea/problems.hpp"
#include "llmoea/prompt_grammar.hpp"
#include "llmoea/rng.hpp"

using namespace llmoea;

namespace {

Population random_population(const ProblemSpec& spec, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed);
  Population pop = initialize_population(spec, n, rng);
  evaluate(spec, pop);
  return pop;
}

std::vector<ObjectiveVector> random_points(std::size_t n, std::size_t m,
                                           std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ObjectiveVector> points(n, ObjectiveVector(m));
  for (auto& p : points)
    for (auto& v : p) v = u(eng);
  return points;
}

void BM_NondominatedSort(benchmark::State& state) {
  const ProblemSpec spec = make_problem("ZDT1");
  Population pop = random_population(spec, static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fast_nondominated_sort(pop));
  }
}
BENCHMARK(BM_NondominatedSort)->Arg(100)->Arg(200)->Arg(400);

void BM_CrowdingDistance(benchmark::State& state) {
  const ProblemSpec spec = make_problem("ZDT1");
  Population pop = random_population(spec, static_cast<std::size_t>(state.range(0)), 12);
  const FrontPartition partition = fast_nondominated_sort(pop);
  for (auto _ : state) {
    crowding_distance(pop, partition);
    benchmark::DoNotOptimize(pop.members.front().crowding);
  }
}
BENCHMARK(BM_CrowdingDistance)->Arg(100)->Arg(400);

void BM_Hypervolume2D(benchmark::State& state) {
  const auto samples = true_pf_samples("ZDT1", 1000);
  const MetricContext ctx = make_metric_context(samples);
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 2, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hypervolume(points, ctx));
  }
}
BENCHMARK(BM_Hypervolume2D)->Arg(100)->Arg(1000);

void BM_Hypervolume3D(benchmark::State& state) {
  const auto samples = true_pf_samples("UF8", 990);
  const MetricContext ctx = make_metric_context(samples);
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 3, 14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hypervolume(points, ctx));
  }
}
BENCHMARK(BM_Hypervolume3D)->Arg(50)->Arg(200);

void BM_Igd(benchmark::State& state) {
  const auto samples = true_pf_samples("ZDT1", 10000);
  const auto points = random_points(100, 2, 15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(igd(points, samples));
  }
}
BENCHMARK(BM_Igd);

void BM_Evaluate(benchmark::State& state) {
  const ProblemSpec spec =
      make_problem(state.range(0) == 0 ? "ZDT1" : "UF8", 30);
  RngStream rng(16);
  Population pop = initialize_population(spec, 100, rng);
  for (auto _ : state) {
    for (auto& member : pop.members) member.f.clear();
    pop.evaluations_used = 0;
    evaluate(spec, pop);
    benchmark::DoNotOptimize(pop.members.front().f);
  }
}
BENCHMARK(BM_Evaluate)->Arg(0)->Arg(1);

void BM_GenerationStep(benchmark::State& state) {
  const ProblemSpec spec = make_problem("ZDT1");
  RngStream rng(17);
  Population pop = random_population(spec, 100, 17);
  const FrontPartition partition = fast_nondominated_sort(pop);
  crowding_distance(pop, partition);
  const VariationParams params;
  for (auto _ : state) {
    Population children = plain_variation(pop, spec, params, rng);
    evaluate(spec, children);
    Population merged = pop;
    for (auto& child : children.members) merged.members.push_back(std::move(child));
    merged.evaluations_used = pop.evaluations_used + children.size();
    Population next = environmental_selection(merged, pop.size());
    benchmark::DoNotOptimize(next.members.front().id);
  }
}
BENCHMARK(BM_GenerationStep);

void BM_PromptRoundTrip(benchmark::State& state) {
  const ProblemSpec spec = make_problem("ZDT1", 30);
  Population pop = random_population(spec, 100, 18);
  const FrontPartition partition = fast_nondominated_sort(pop);
  crowding_distance(pop, partition);
  RngStream rng(18);
  const auto pool = build_mating_pool(pop, pop.size(), rng);
  const ElitePool elites = select_elites(pool, 5);
  for (auto _ : state) {
    const PromptBundle prompt = build_prompt(elites, spec, 3);
    benchmark::DoNotOptimize(grammar::parse_prompt_examples(prompt.rendered));
  }
}
BENCHMARK(BM_PromptRoundTrip);

}  // namespace

BENCHMARK_MAIN();
