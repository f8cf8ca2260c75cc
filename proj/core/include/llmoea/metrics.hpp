#pragma once

#include <cstddef>
#include <vector>

#include "llmoea/core.hpp"

namespace llmoea {

// Normalization frame for hypervolume: component-wise extremes of the true
// front plus the reference multiplier. Normalized space puts the front in
// [0,1]^M with the reference point at (multiplier,...,multiplier).
struct MetricContext {
  ObjectiveVector ideal;
  ObjectiveVector nadir;
  double ref_multiplier = 1.1;
};

// Builds the frame from front samples. Throws std::invalid_argument when the
// front is empty, ragged, or degenerate (ideal == nadir on some objective).
MetricContext make_metric_context(const std::vector<ObjectiveVector>& front,
                                  double ref_multiplier = 1.1);

// Order-preserving filter to the mutually non-dominated subset. Duplicates
// of a kept point are kept.
std::vector<ObjectiveVector> nondominated_subset(const std::vector<ObjectiveVector>& points);

// Exact normalized hypervolume for 2 or 3 objectives: points are normalized,
// anything not strictly inside the reference box is dropped, the dominated
// union volume is measured and divided by multiplier^M, so a set matching
// the true front approaches (but never reaches) 1. Empty input gives 0.
double hypervolume(const std::vector<ObjectiveVector>& points, const MetricContext& ctx);

// Inverted generational distance in raw objective space: mean over the front
// samples of the Euclidean distance to the nearest point. Empty point sets
// give +inf; an empty front throws.
double igd(const std::vector<ObjectiveVector>& points,
           const std::vector<ObjectiveVector>& front);

}  // namespace llmoea
