#include "llmoea/gate.hpp"

#include <cmath>
#include <stdexcept>

namespace llmoea {

double auxiliary_score(const Population& pop, const FrontPartition& partition) {
  if (pop.size() == 0) throw std::invalid_argument("auxiliary_score: empty population");
  std::size_t partition_total = 0;
  for (const auto& front : partition.fronts) partition_total += front.size();
  if (partition_total != pop.size()) {
    throw std::invalid_argument("auxiliary_score: partition does not cover the population");
  }

  double crowding_sum = 0.0;
  std::size_t finite_count = 0;
  double rank_sum = 0.0;
  for (const Individual& ind : pop.members) {
    if (!ind.has_rank() || !ind.has_crowding()) {
      throw std::invalid_argument("auxiliary_score: member missing rank or crowding");
    }
    rank_sum += static_cast<double>(ind.rank);
    if (std::isfinite(ind.crowding)) {
      crowding_sum += ind.crowding;
      ++finite_count;
    }
  }
  if (finite_count == 0) return kScoreSentinel;
  const double mean_crowding = crowding_sum / static_cast<double>(finite_count);
  const double mean_rank = rank_sum / static_cast<double>(pop.size());
  return -mean_crowding + mean_rank;
}

}  // namespace llmoea
