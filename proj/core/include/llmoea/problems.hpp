#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "llmoea/core.hpp"

namespace llmoea {

// Canonical benchmark names: ZDT1-ZDT4, ZDT6 and UF1-UF10.
std::vector<std::string> problem_names();

// Builds the named benchmark with its usual dimension (ZDT1-3 and UF1-10: 30,
// ZDT4/ZDT6: 10) unless overridden. Lookup is case-insensitive. Throws
// std::invalid_argument for unknown names or dimensions too small for the
// problem's index structure.
ProblemSpec make_problem(const std::string& name,
                         std::optional<std::size_t> dimension = std::nullopt);

// ~count points of the analytic Pareto front. Discrete fronts (UF5) return
// their full point set; piecewise fronts distribute points over the pieces.
std::vector<ObjectiveVector> true_pf_samples(const std::string& name, std::size_t count);

}  // namespace llmoea
