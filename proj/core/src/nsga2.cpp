#include "llmoea/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace llmoea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clip(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace

FrontPartition fast_nondominated_sort(Population& pop) {
  const std::size_t n = pop.size();
  if (n == 0) throw std::invalid_argument("fast_nondominated_sort: empty population");
  const std::size_t m = pop.members.front().f.size();
  for (const Individual& ind : pop.members) {
    if (!ind.evaluated() || ind.f.size() != m) {
      throw std::invalid_argument("fast_nondominated_sort: unevaluated or mismatched member");
    }
  }

  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dom_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(pop.members[i].f, pop.members[j].f)) {
        dominated[i].push_back(j);
        ++dom_count[j];
      } else if (dominates(pop.members[j].f, pop.members[i].f)) {
        dominated[j].push_back(i);
        ++dom_count[i];
      }
    }
  }

  FrontPartition part;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    pop.members[i].crowding = Individual::kUnsetCrowding;
    if (dom_count[i] == 0) current.push_back(i);
  }
  int rank = 1;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      pop.members[i].rank = rank;
      for (std::size_t j : dominated[i]) {
        if (--dom_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    part.fronts.push_back(std::move(current));
    current = std::move(next);
    ++rank;
  }
  return part;
}

void crowding_distance(Population& pop, const FrontPartition& partition) {
  for (const std::vector<std::size_t>& front : partition.fronts) {
    if (front.size() <= 2) {
      for (std::size_t i : front) pop.members[i].crowding = kInf;
      continue;
    }
    for (std::size_t i : front) pop.members[i].crowding = 0.0;
    const std::size_t m = pop.members[front.front()].f.size();
    std::vector<std::size_t> order(front);
    for (std::size_t obj = 0; obj < m; ++obj) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double fa = pop.members[a].f[obj];
        const double fb = pop.members[b].f[obj];
        if (fa != fb) return fa < fb;
        return pop.members[a].id < pop.members[b].id;
      });
      pop.members[order.front()].crowding = kInf;
      pop.members[order.back()].crowding = kInf;
      const double span = pop.members[order.back()].f[obj] - pop.members[order.front()].f[obj];
      if (span <= 0.0) continue;
      for (std::size_t k = 1; k + 1 < order.size(); ++k) {
        Individual& ind = pop.members[order[k]];
        if (std::isinf(ind.crowding)) continue;
        ind.crowding += (pop.members[order[k + 1]].f[obj] - pop.members[order[k - 1]].f[obj]) / span;
      }
    }
  }
}

bool crowded_less(const Individual& a, const Individual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  if (a.crowding != b.crowding) return a.crowding > b.crowding;
  return a.id < b.id;
}

const Individual& binary_tournament_select(const Population& pop, RngStream& rng) {
  const std::size_t i = rng.uniform_index(pop.size());
  const std::size_t j = rng.uniform_index(pop.size());
  const Individual& a = pop.members[i];
  const Individual& b = pop.members[j];
  return crowded_less(a, b) ? a : b;
}

std::pair<DecisionVector, DecisionVector> sbx_crossover(
    const DecisionVector& a, const DecisionVector& b,
    const std::vector<double>& lower, const std::vector<double>& upper,
    const VariationParams& params, RngStream& rng) {
  DecisionVector c1 = a;
  DecisionVector c2 = b;
  if (rng.uniform01() < params.crossover_prob) {
    const double exponent = 1.0 / (params.sbx_eta + 1.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (rng.uniform01() >= 0.5) continue;
      const double u = rng.uniform01();
      const double beta = (u <= 0.5)
                              ? std::pow(2.0 * u, exponent)
                              : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
      double v1 = 0.5 * ((1.0 + beta) * a[k] + (1.0 - beta) * b[k]);
      double v2 = 0.5 * ((1.0 - beta) * a[k] + (1.0 + beta) * b[k]);
      // The child swap is what recombines genes across the pair.
      if (rng.uniform01() < 0.5) std::swap(v1, v2);
      c1[k] = clip(v1, lower[k], upper[k]);
      c2[k] = clip(v2, lower[k], upper[k]);
    }
  }
  return {std::move(c1), std::move(c2)};
}

DecisionVector polynomial_mutation(const DecisionVector& x,
                                   const std::vector<double>& lower,
                                   const std::vector<double>& upper,
                                   const VariationParams& params, RngStream& rng) {
  DecisionVector y = x;
  const double prob = params.mutation_prob_scale / static_cast<double>(x.size());
  const double exponent = 1.0 / (params.pm_eta + 1.0);
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (rng.uniform01() >= prob) continue;
    const double lo = lower[k];
    const double hi = upper[k];
    const double span = hi - lo;
    const double u = rng.uniform01();
    double delta;
    if (u < 0.5) {
      const double d1 = (y[k] - lo) / span;
      delta = std::pow(2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, params.pm_eta + 1.0),
                       exponent) - 1.0;
    } else {
      const double d2 = (hi - y[k]) / span;
      delta = 1.0 - std::pow(2.0 * (1.0 - u) +
                                 (2.0 * u - 1.0) * std::pow(1.0 - d2, params.pm_eta + 1.0),
                             exponent);
    }
    y[k] = clip(y[k] + delta * span, lo, hi);
  }
  return y;
}

std::vector<Individual> breed_pool(const std::vector<Individual>& pool,
                                   const ProblemSpec& spec,
                                   const VariationParams& params,
                                   RngStream& rng, std::uint64_t& next_id) {
  if (pool.empty()) throw std::invalid_argument("breed_pool: empty mating pool");
  std::vector<Individual> children;
  children.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); i += 2) {
    const Individual& p1 = pool[i];
    const Individual& p2 = pool[(i + 1) % pool.size()];
    auto [x1, x2] = sbx_crossover(p1.x, p2.x, spec.lower, spec.upper, params, rng);
    Individual c1;
    c1.x = polynomial_mutation(x1, spec.lower, spec.upper, params, rng);
    c1.id = next_id++;
    children.push_back(std::move(c1));
    if (children.size() == pool.size()) break;
    Individual c2;
    c2.x = polynomial_mutation(x2, spec.lower, spec.upper, params, rng);
    c2.id = next_id++;
    children.push_back(std::move(c2));
  }
  return children;
}

Population environmental_selection(Population union_pop, std::size_t count) {
  if (union_pop.size() < count) {
    throw std::invalid_argument("environmental_selection: union smaller than target size");
  }
  FrontPartition part = fast_nondominated_sort(union_pop);
  crowding_distance(union_pop, part);

  Population next;
  next.generation = union_pop.generation + 1;
  next.evaluations_used = union_pop.evaluations_used;
  next.next_id = union_pop.next_id;
  next.members.reserve(count);

  for (const std::vector<std::size_t>& front : part.fronts) {
    std::vector<std::size_t> order(front);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Individual& ia = union_pop.members[a];
      const Individual& ib = union_pop.members[b];
      if (ia.crowding != ib.crowding) return ia.crowding > ib.crowding;
      return ia.id < ib.id;
    });
    for (std::size_t idx : order) {
      if (next.members.size() == count) break;
      next.members.push_back(union_pop.members[idx]);
    }
    if (next.members.size() == count) break;
  }
  return next;
}

}  // namespace llmoea
