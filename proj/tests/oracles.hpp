#pragma once

// Independent reference implementations the unit and acceptance tests check
// the production code against. Deliberately written in the most literal way
// possible (repeated peeling, rejection-free Monte Carlo) so a bug would have
// to appear twice, in different forms, to slip through.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "llmoea/core.hpp"
#include "llmoea/metrics.hpp"

namespace oracle {

// Strict Pareto dominance, re-derived rather than calling the library.
inline bool dominates(const llmoea::ObjectiveVector& a, const llmoea::ObjectiveVector& b) {
  bool strictly_better = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strictly_better = true;
  }
  return strictly_better;
}

// 1-based ranks by repeatedly peeling the mutually non-dominated subset of
// whatever is left. O(n^3), fine for test sizes.
inline std::vector<int> peel_ranks(const std::vector<llmoea::ObjectiveVector>& points) {
  const std::size_t n = points.size();
  std::vector<int> rank(n, 0);
  int current = 0;
  std::size_t assigned = 0;
  while (assigned < n) {
    ++current;
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < n; ++i) {
      if (rank[i] != 0) continue;
      bool beaten = false;
      for (std::size_t j = 0; j < n && !beaten; ++j) {
        if (i != j && rank[j] == 0 && dominates(points[j], points[i])) beaten = true;
      }
      if (!beaten) layer.push_back(i);
    }
    for (std::size_t i : layer) rank[i] = current;
    assigned += layer.size();
  }
  return rank;
}

// Monte Carlo estimate of the same normalized hypervolume contract the
// library implements: normalize by (ideal, nadir), clamp negatives to zero,
// drop points not strictly inside the reference box, measure the dominated
// fraction of [lo, ref]^M and rescale to the full [0, ref]^M box.
inline double mc_hypervolume(const std::vector<llmoea::ObjectiveVector>& points,
                             const llmoea::MetricContext& ctx, std::size_t samples,
                             std::uint64_t seed) {
  const std::size_t m = ctx.ideal.size();
  const double ref = ctx.ref_multiplier;
  std::vector<llmoea::ObjectiveVector> kept;
  for (const auto& p : points) {
    llmoea::ObjectiveVector q(m);
    bool inside = true;
    for (std::size_t k = 0; k < m; ++k) {
      const double span = ctx.nadir[k] - ctx.ideal[k];
      q[k] = std::max(0.0, (p[k] - ctx.ideal[k]) / span);
      if (q[k] >= ref) inside = false;
    }
    if (inside) kept.push_back(std::move(q));
  }
  if (kept.empty()) return 0.0;

  // Sampling box: [component minimum, ref] per axis. Everything below the
  // minimum on any axis is dominated by nothing, so skipping it is exact.
  llmoea::ObjectiveVector lo(m, ref);
  for (const auto& q : kept)
    for (std::size_t k = 0; k < m; ++k) lo[k] = std::min(lo[k], q[k]);

  double box = 1.0;
  for (std::size_t k = 0; k < m; ++k) box *= ref - lo[k];
  if (box <= 0.0) return 0.0;

  std::mt19937_64 eng(seed);
  const auto unit = [&eng]() {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };
  std::size_t hits = 0;
  std::vector<double> s(m);
  for (std::size_t it = 0; it < samples; ++it) {
    for (std::size_t k = 0; k < m; ++k) s[k] = lo[k] + (ref - lo[k]) * unit();
    for (const auto& q : kept) {
      bool covered = true;
      for (std::size_t k = 0; k < m; ++k) {
        if (q[k] > s[k]) {
          covered = false;
          break;
        }
      }
      if (covered) {
        ++hits;
        break;
      }
    }
  }
  const double volume = box * static_cast<double>(hits) / static_cast<double>(samples);
  return volume / std::pow(ref, static_cast<double>(m));
}

// Evaluated population scaffold: objective vectors become members with ids
// 0..n-1 and placeholder decision vectors.
inline llmoea::Population pop_from_objectives(const std::vector<llmoea::ObjectiveVector>& objs) {
  llmoea::Population pop;
  pop.members.reserve(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i) {
    llmoea::Individual ind;
    ind.id = i;
    ind.x = {0.0};
    ind.f = objs[i];
    pop.members.push_back(std::move(ind));
  }
  pop.next_id = objs.size();
  return pop;
}

// Uniform random objective sets for sort/hypervolume cross-checks. With
// duplicate_bias > 0 some points are exact copies of earlier ones, which
// exercises the equal-vector corner of dominance.
inline std::vector<llmoea::ObjectiveVector> random_objectives(std::mt19937_64& eng,
                                                              std::size_t count,
                                                              std::size_t objectives,
                                                              double duplicate_bias = 0.0) {
  const auto unit = [&eng]() {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };
  std::vector<llmoea::ObjectiveVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0 && unit() < duplicate_bias) {
      out.push_back(out[eng() % i]);
      continue;
    }
    llmoea::ObjectiveVector p(objectives);
    for (auto& v : p) v = unit();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace oracle
