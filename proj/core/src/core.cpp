#include "llmoea/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace llmoea {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("dominates: objective vectors of unequal or zero length");
  }
  bool strictly_better = false;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] > b[m]) return false;
    if (a[m] < b[m]) strictly_better = true;
  }
  return strictly_better;
}

Population initialize_population(const ProblemSpec& spec, std::size_t count,
                                 RngStream& rng) {
  if (count == 0) throw std::invalid_argument("initialize_population: count must be positive");
  if (spec.dimension == 0 || spec.lower.size() != spec.dimension ||
      spec.upper.size() != spec.dimension) {
    throw std::invalid_argument("initialize_population: malformed problem bounds");
  }
  Population pop;
  pop.members.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    Individual& ind = pop.members[i];
    ind.id = i;
    ind.x.resize(spec.dimension);
    for (std::size_t k = 0; k < spec.dimension; ++k) {
      const double r = rng.uniform_open01();
      ind.x[k] = spec.lower[k] + (spec.upper[k] - spec.lower[k]) * r;
    }
  }
  pop.next_id = count;
  return pop;
}

void evaluate_individual(const ProblemSpec& spec, Individual& ind) {
  ind.f = spec.evaluator(ind.x);
  if (ind.f.size() != spec.objectives) {
    std::ostringstream msg;
    msg << "evaluate: problem " << spec.name << " returned " << ind.f.size()
        << " objectives for individual id=" << ind.id << ", expected " << spec.objectives;
    throw std::runtime_error(msg.str());
  }
  for (double v : ind.f) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "evaluate: non-finite objective for individual id=" << ind.id
          << " on problem " << spec.name;
      throw std::runtime_error(msg.str());
    }
  }
}

void evaluate(const ProblemSpec& spec, Population& pop) {
  for (Individual& ind : pop.members) {
    if (ind.evaluated()) continue;
    evaluate_individual(spec, ind);
    ++pop.evaluations_used;
  }
}

}  // namespace llmoea
