#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "llmoea/core.hpp"
#include "llmoea/nsga2.hpp"

namespace llmoea {

// Score returned when no member has a finite crowding distance. It compares
// below every real score and disables invocation on either side of the gate.
inline constexpr double kScoreSentinel = -std::numeric_limits<double>::infinity();

// Convergence/diversity summary of a ranked population: negated mean of the
// finite crowding distances plus the mean 1-based front index. Higher means
// the population is more crowded and/or less converged. Requires rank and
// crowding set on every member; returns kScoreSentinel when every crowding
// value is infinite.
double auxiliary_score(const Population& pop, const FrontPartition& partition);

struct GateRecord {
  std::size_t generation = 0;
  double score = 0.0;
  bool invoked = false;
};

// Decides, once per generation, whether the expensive generator runs: invoke
// when the score rose by at least delta since the previous generation. The
// previous score starts at 0. Sentinel scores on either side never invoke
// but still advance the history.
class GateState {
 public:
  explicit GateState(double delta) : delta_(delta) {}

  double delta() const { return delta_; }
  double previous_score() const { return previous_; }
  const std::vector<GateRecord>& history() const { return history_; }

  // Decision for `score` without committing anything.
  bool would_invoke(double score) const {
    if (!std::isfinite(score) || !std::isfinite(previous_)) return false;
    return score - previous_ >= delta_;
  }

  // Commits one generation: appends to history and shifts the previous score.
  void record(double score, bool invoked) {
    history_.push_back({history_.size() + 1, score, invoked});
    previous_ = score;
  }

  // Decide-and-commit in one step.
  bool should_invoke_llm(double score) {
    const bool invoke = would_invoke(score);
    record(score, invoke);
    return invoke;
  }

 private:
  double delta_;
  double previous_ = 0.0;
  std::vector<GateRecord> history_;
};

}  // namespace llmoea
