#include "llmoea/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace llmoea {

namespace {

// Area of the union of boxes [p, ref] for mutually arbitrary 2-d points.
// Points must already lie strictly below ref in both coordinates.
double union_area_2d(std::vector<std::array<double, 2>> pts, double rx, double ry) {
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
  });
  // Keep the staircase: strictly decreasing y along increasing x.
  std::vector<std::array<double, 2>> stair;
  for (const auto& p : pts) {
    if (!stair.empty() && p[1] >= stair.back()[1]) continue;
    stair.push_back(p);
  }
  double area = 0.0;
  for (std::size_t i = 0; i < stair.size(); ++i) {
    const double next_x = (i + 1 < stair.size()) ? stair[i + 1][0] : rx;
    area += (next_x - stair[i][0]) * (ry - stair[i][1]);
  }
  return area;
}

}  // namespace

MetricContext make_metric_context(const std::vector<ObjectiveVector>& front,
                                  double ref_multiplier) {
  if (front.empty()) throw std::invalid_argument("make_metric_context: empty front");
  if (!(ref_multiplier > 1.0)) {
    throw std::invalid_argument("make_metric_context: reference multiplier must exceed 1");
  }
  const std::size_t m = front.front().size();
  MetricContext ctx;
  ctx.ideal.assign(m, std::numeric_limits<double>::infinity());
  ctx.nadir.assign(m, -std::numeric_limits<double>::infinity());
  ctx.ref_multiplier = ref_multiplier;
  for (const ObjectiveVector& p : front) {
    if (p.size() != m) throw std::invalid_argument("make_metric_context: ragged front");
    for (std::size_t k = 0; k < m; ++k) {
      ctx.ideal[k] = std::min(ctx.ideal[k], p[k]);
      ctx.nadir[k] = std::max(ctx.nadir[k], p[k]);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!(ctx.ideal[k] < ctx.nadir[k])) {
      throw std::invalid_argument("make_metric_context: degenerate objective range");
    }
  }
  return ctx;
}

std::vector<ObjectiveVector> nondominated_subset(const std::vector<ObjectiveVector>& points) {
  std::vector<ObjectiveVector> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j != i && dominates(points[j], points[i])) dominated = true;
    }
    if (!dominated) kept.push_back(points[i]);
  }
  return kept;
}

double hypervolume(const std::vector<ObjectiveVector>& points, const MetricContext& ctx) {
  const std::size_t m = ctx.ideal.size();
  if (m != 2 && m != 3) {
    throw std::invalid_argument("hypervolume: only 2 or 3 objectives supported");
  }
  const double ref = ctx.ref_multiplier;

  // Normalize, clamp below at the ideal, and keep only points strictly
  // dominating the reference corner. Clamping keeps the result in [0,1] when
  // a point beats the sampled ideal on some objective.
  std::vector<ObjectiveVector> norm;
  norm.reserve(points.size());
  for (const ObjectiveVector& p : points) {
    if (p.size() != m) throw std::invalid_argument("hypervolume: point arity mismatch");
    ObjectiveVector q(m);
    bool inside = true;
    for (std::size_t k = 0; k < m; ++k) {
      q[k] = (p[k] - ctx.ideal[k]) / (ctx.nadir[k] - ctx.ideal[k]);
      if (q[k] < 0.0) q[k] = 0.0;
      if (!(q[k] < ref)) {
        inside = false;
        break;
      }
    }
    if (inside) norm.push_back(std::move(q));
  }
  if (norm.empty()) return 0.0;

  double volume = 0.0;
  if (m == 2) {
    std::vector<std::array<double, 2>> pts;
    pts.reserve(norm.size());
    for (const auto& q : norm) pts.push_back({q[0], q[1]});
    volume = union_area_2d(std::move(pts), ref, ref);
  } else {
    // Sweep along the third objective: each slab contributes the 2-d union
    // area of every point at or below its base.
    std::sort(norm.begin(), norm.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
      if (a[2] != b[2]) return a[2] < b[2];
      if (a[0] != b[0]) return a[0] < b[0];
      return a[1] < b[1];
    });
    std::vector<std::array<double, 2>> active;
    std::size_t i = 0;
    while (i < norm.size()) {
      const double z = norm[i][2];
      while (i < norm.size() && norm[i][2] == z) {
        active.push_back({norm[i][0], norm[i][1]});
        ++i;
      }
      const double z_next = (i < norm.size()) ? norm[i][2] : ref;
      volume += union_area_2d(active, ref, ref) * (z_next - z);
    }
  }
  return volume / std::pow(ref, static_cast<double>(m));
}

double igd(const std::vector<ObjectiveVector>& points,
           const std::vector<ObjectiveVector>& front) {
  if (front.empty()) throw std::invalid_argument("igd: empty reference front");
  if (points.empty()) return std::numeric_limits<double>::infinity();
  const std::size_t m = front.front().size();
  double total = 0.0;
  for (const ObjectiveVector& ref : front) {
    double best = std::numeric_limits<double>::infinity();
    for (const ObjectiveVector& p : points) {
      if (p.size() != m) throw std::invalid_argument("igd: point arity mismatch");
      double dist2 = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double diff = p[k] - ref[k];
        dist2 += diff * diff;
      }
      if (dist2 < best) best = dist2;
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(front.size());
}

}  // namespace llmoea
