#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "llmoea/rng.hpp"

namespace llmoea {

using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

// One candidate solution. Objectives stay empty until evaluated; rank and
// crowding are populated by the non-dominated sort and crowding pass and are
// invalidated by any fresh sort.
struct Individual {
  static constexpr double kUnsetCrowding = -1.0;

  DecisionVector x;
  ObjectiveVector f;                  // empty = not evaluated yet
  int rank = 0;                       // 1-based front index, 0 = unset
  double crowding = kUnsetCrowding;   // >= 0 or +inf once set
  std::uint64_t id = 0;               // unique within a run

  bool evaluated() const { return !f.empty(); }
  bool has_rank() const { return rank > 0; }
  bool has_crowding() const { return crowding != kUnsetCrowding; }
};

struct Population {
  std::vector<Individual> members;
  std::size_t generation = 0;
  std::size_t evaluations_used = 0;
  std::uint64_t next_id = 0;          // id allocator for later offspring

  std::size_t size() const { return members.size(); }
};

// Box-constrained minimization problem. evaluator must be pure and finite on
// [lower,upper]; pf_sampler returns ~count points of the true Pareto front.
struct ProblemSpec {
  std::string name;
  std::size_t dimension = 0;          // decision variables
  std::size_t objectives = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  std::function<ObjectiveVector(const DecisionVector&)> evaluator;
  std::function<std::vector<ObjectiveVector>(std::size_t)> pf_sampler;
};

// Strict Pareto dominance for minimization: a is no worse everywhere and
// strictly better somewhere. Throws std::invalid_argument on length mismatch.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Uniform sample of the box, one open-interval draw per variable in index
// order. Members get ids 0..count-1 and are not yet evaluated.
Population initialize_population(const ProblemSpec& spec, std::size_t count,
                                 RngStream& rng);

// Evaluates one individual in place. Throws std::runtime_error naming the
// individual if any objective comes back non-finite.
void evaluate_individual(const ProblemSpec& spec, Individual& ind);

// Evaluates every unevaluated member and charges each one to
// pop.evaluations_used. Already-evaluated members are left alone.
void evaluate(const ProblemSpec& spec, Population& pop);

}  // namespace llmoea
