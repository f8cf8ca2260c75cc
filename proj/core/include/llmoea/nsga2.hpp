#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "llmoea/core.hpp"

namespace llmoea {

// Fronts as indices into the population that was sorted, best front first.
struct FrontPartition {
  std::vector<std::vector<std::size_t>> fronts;
};

struct VariationParams {
  double crossover_prob = 1.0;       // per-pair SBX probability
  double sbx_eta = 20.0;             // SBX distribution index
  double mutation_prob_scale = 1.0;  // per-variable prob = scale / dimension
  double pm_eta = 20.0;              // polynomial mutation distribution index
};

// Deb's fast non-dominated sort. Assigns 1-based ranks, resets crowding to
// unset, and returns the partition with each front in ascending index order.
// Requires every member evaluated with equal objective counts.
FrontPartition fast_nondominated_sort(Population& pop);

// Crowding distance per front: boundary members of each objective ordering
// get +inf, interior members accumulate normalized neighbour gaps. Fronts of
// size <= 2 are all +inf; an objective with zero spread contributes nothing.
// Ties in an objective are ordered by id so the pass is deterministic.
void crowding_distance(Population& pop, const FrontPartition& partition);

// Tournament order: lower rank wins, then larger crowding, then smaller id.
// Both individuals need rank and crowding set.
bool crowded_less(const Individual& a, const Individual& b);

// Two independent index draws with replacement, winner by crowded_less.
const Individual& binary_tournament_select(const Population& pop, RngStream& rng);

// Simulated binary crossover. With probability crossover_prob the pair mixes;
// each variable then mixes with probability 0.5 and the two child values swap
// sides with probability 0.5. Children are clipped to the box. Draw order per
// crossed variable: gate draw, spread draw, swap draw.
std::pair<DecisionVector, DecisionVector> sbx_crossover(
    const DecisionVector& a, const DecisionVector& b,
    const std::vector<double>& lower, const std::vector<double>& upper,
    const VariationParams& params, RngStream& rng);

// Bounded polynomial mutation; each variable mutates with probability
// mutation_prob_scale / dimension. Result is clipped to the box.
DecisionVector polynomial_mutation(const DecisionVector& x,
                                   const std::vector<double>& lower,
                                   const std::vector<double>& upper,
                                   const VariationParams& params, RngStream& rng);

// Pairs up consecutive pool entries, applies SBX then mutation to produce
// exactly pool.size() children with fresh ids from next_id. Children are not
// evaluated. Odd pools wrap the last pair around to pool.front().
std::vector<Individual> breed_pool(const std::vector<Individual>& pool,
                                   const ProblemSpec& spec,
                                   const VariationParams& params,
                                   RngStream& rng, std::uint64_t& next_id);

// mu+lambda survival: whole fronts in order, the split front by descending
// crowding with id as tie-break. The result carries the union's evaluation
// count and id allocator and generation + 1. Throws if |union| < count.
Population environmental_selection(Population union_pop, std::size_t count);

}  // namespace llmoea
