#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "llmoea/core.hpp"
#include "llmoea/problems.hpp"
#include "llmoea/rng.hpp"

using namespace llmoea;

TEST_CASE("dominance is strict Pareto dominance") {
  CHECK(dominates({0.0, 0.0}, {1.0, 1.0}));
  CHECK(dominates({0.0, 1.0}, {0.0, 2.0}));
  CHECK(dominates({1.0, 2.0, 3.0}, {1.0, 2.0, 4.0}));
  CHECK_FALSE(dominates({1.0, 0.0}, {0.0, 1.0}));
  CHECK_FALSE(dominates({0.0, 1.0}, {1.0, 0.0}));
  CHECK_FALSE(dominates({1.0, 1.0}, {1.0, 1.0}));
  CHECK_FALSE(dominates({1.0, 1.0}, {0.0, 0.0}));
  CHECK_THROWS_AS(dominates({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(dominates({}, {}), std::invalid_argument);
}

TEST_CASE("rng stream basics") {
  RngStream rng(42);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform_open01();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
  // Same seed replays the identical sequence.
  RngStream a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  // uniform_index stays in range and visits every cell of a small range.
  RngStream c(3);
  bool seen[5] = {false, false, false, false, false};
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = c.uniform_index(5);
    REQUIRE(k < 5);
    seen[k] = true;
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("initialization draws inside the open box with sequential ids") {
  const ProblemSpec spec = make_problem("ZDT4");  // mixed bounds: [0,1] x [-5,5]^9
  RngStream rng(11);
  const Population pop = initialize_population(spec, 50, rng);
  CHECK(pop.members.size() == 50);
  CHECK(pop.generation == 0);
  CHECK(pop.evaluations_used == 0);
  CHECK(pop.next_id == 50);
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    const Individual& ind = pop.members[i];
    CHECK(ind.id == i);
    CHECK_FALSE(ind.evaluated());
    CHECK_FALSE(ind.has_rank());
    CHECK_FALSE(ind.has_crowding());
    REQUIRE(ind.x.size() == spec.dimension);
    for (std::size_t k = 0; k < spec.dimension; ++k) {
      CHECK(ind.x[k] > spec.lower[k]);
      CHECK(ind.x[k] < spec.upper[k]);
    }
  }
}

TEST_CASE("initialization is a pure function of the seed") {
  const ProblemSpec spec = make_problem("ZDT1");
  RngStream r1(5), r2(5), r3(6);
  const Population a = initialize_population(spec, 20, r1);
  const Population b = initialize_population(spec, 20, r2);
  const Population c = initialize_population(spec, 20, r3);
  bool differs = false;
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(a.members[i].x == b.members[i].x);
    if (a.members[i].x != c.members[i].x) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("initialization covers the box roughly uniformly") {
  const ProblemSpec spec = make_problem("ZDT1", 2);
  RngStream rng(99);
  const Population pop = initialize_population(spec, 4000, rng);
  double mean = 0.0;
  for (const auto& ind : pop.members) mean += ind.x[0];
  mean /= static_cast<double>(pop.members.size());
  CHECK(mean == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("evaluation charges the budget once per individual") {
  const ProblemSpec spec = make_problem("ZDT1");
  RngStream rng(1);
  Population pop = initialize_population(spec, 10, rng);
  evaluate(spec, pop);
  CHECK(pop.evaluations_used == 10);
  for (const auto& ind : pop.members) {
    REQUIRE(ind.evaluated());
    CHECK(ind.f.size() == 2);
  }
  // A second pass finds nothing unevaluated and charges nothing.
  evaluate(spec, pop);
  CHECK(pop.evaluations_used == 10);

  Individual extra;
  extra.id = pop.next_id++;
  extra.x = std::vector<double>(spec.dimension, 0.5);
  pop.members.push_back(extra);
  evaluate(spec, pop);
  CHECK(pop.evaluations_used == 11);
  CHECK(pop.members.back().f[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("evaluation rejects broken evaluators with the offender named") {
  ProblemSpec spec = make_problem("ZDT1", 3);
  spec.evaluator = [](const DecisionVector&) {
    return ObjectiveVector{1.0, std::numeric_limits<double>::quiet_NaN()};
  };
  Individual ind;
  ind.id = 7;
  ind.x = {0.1, 0.2, 0.3};
  Population pop;
  pop.members.push_back(ind);
  CHECK_THROWS_WITH_AS(evaluate(spec, pop), doctest::Contains("id=7"), std::runtime_error);

  spec.evaluator = [](const DecisionVector&) { return ObjectiveVector{1.0}; };
  pop.members[0].f.clear();
  CHECK_THROWS_AS(evaluate(spec, pop), std::runtime_error);
}
