#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llmoea/core.hpp"
#include "llmoea/gate.hpp"
#include "llmoea/llm_operator.hpp"
#include "llmoea/metrics.hpp"
#include "llmoea/nsga2.hpp"
#include "llmoea/problems.hpp"
#include "llmoea/providers.hpp"

namespace llmoea {

// nsga2: plain backbone. nsga2_llm: generator gated on the population score.
// nsga2_llm_always: generator every generation (cost baseline).
enum class Algorithm { nsga2, nsga2_llm, nsga2_llm_always };

std::string to_string(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_string(std::string_view text);

struct RunConfig {
  std::string problem = "ZDT1";
  Algorithm algorithm = Algorithm::nsga2;
  std::size_t population_size = 100;
  std::size_t max_evaluations = 10000;
  // 0 = twice the evaluation-implied generation count; guards non-charging
  // configurations against endless loops.
  std::size_t generation_cap = 0;
  std::size_t elite_count = 5;       // prompt examples per invocation
  std::size_t offspring_count = 3;   // solutions requested per invocation
  int retries = 3;                   // provider attempts beyond the first
  double delta = 0.1;                // score-improvement threshold
  bool free_llm_evals = false;       // leave injected offspring off the budget
  std::uint64_t seed = 1;
  VariationParams variation;
  ProviderConfig provider;
  std::size_t front_sample_count = 10000;
  std::optional<std::size_t> dimension;  // overrides the problem default
  std::string output_dir;                // empty = no files written
  bool emit_plot = false;
};

// One metrics row; mirrors the CSV column order.
struct GenerationRecord {
  std::size_t generation = 0;
  std::size_t evaluations = 0;
  double hv = 0.0;
  double igd = 0.0;
  double score = 0.0;
  bool invoked = false;
  std::size_t tokens = 0;  // cumulative across the run
};

// Generator-side bookkeeping for one variation step.
struct GenerationDetail {
  std::size_t generation = 0;
  int attempts = 0;
  std::size_t injected = 0;
  bool fallback = false;
  std::vector<Exchange> exchanges;
};

struct RunReport {
  RunConfig config;
  std::string problem;  // canonical name
  std::vector<GenerationRecord> series;
  std::vector<GenerationDetail> details;
  std::vector<GateRecord> gate_history;
  Population final_population;
  std::vector<ObjectiveVector> final_front;  // non-dominated objectives
  UsageReport usage;
  std::size_t invocations = 0;
  double wall_seconds = 0.0;
};

// Executes one configured run: init, evaluate, then iterate score/gate,
// variation, merge and survival until the next full generation no longer
// fits the evaluation budget. Writes artifacts when output_dir is set.
RunReport run(const RunConfig& config);

// metrics.csv, final_front.csv, run_log.jsonl and optionally convergence.svg.
void emit_outputs(const RunReport& report, const std::string& directory);

struct BatchItem {
  std::string problem;
  Algorithm algorithm = Algorithm::nsga2;
  std::uint64_t seed = 0;
  double hv = 0.0;
  double igd = 0.0;
  std::size_t tokens = 0;
  std::size_t invocations = 0;
  std::size_t evaluations = 0;
  std::size_t generations = 0;
};

struct BatchRow {
  std::string problem;
  Algorithm algorithm = Algorithm::nsga2;
  std::size_t runs = 0;
  double hv_mean = 0.0, hv_std = 0.0;
  double igd_mean = 0.0, igd_std = 0.0;
  double tokens_mean = 0.0;
  double invocations_mean = 0.0;
};

struct BatchResult {
  std::vector<BatchItem> items;  // problem-major, then algorithm, then seed
  std::vector<BatchRow> rows;    // one per (problem, algorithm)
};

// Full grid of problems x algorithms x seeds, fanned out over `jobs` worker
// threads (0 = hardware concurrency). Per-run artifacts land in
// <output_dir>/<problem>_<algorithm>_s<seed>/ plus runs.csv and summary.csv.
BatchResult run_batch(const RunConfig& base, const std::vector<std::string>& problems,
                      const std::vector<Algorithm>& algorithms,
                      const std::vector<std::uint64_t>& seeds, std::size_t jobs = 0,
                      const std::string& output_dir = "");

struct AblationCell {
  double delta = 0.0;
  std::string problem;
  std::uint64_t seed = 0;
  double igd = 0.0;
  std::size_t tokens = 0;
  std::size_t invocations = 0;
};

struct AblationRow {
  double delta = 0.0;
  double tokens_mean = 0.0;
  double igd_mean = 0.0;
  double invocations_mean = 0.0;
};

struct AblationResult {
  std::vector<AblationCell> cells;  // delta-major, then problem, then seed
  std::vector<AblationRow> rows;
};

// Sweeps the gate threshold with the gated algorithm; everything else comes
// from `base`. Writes ablation.csv and cells.csv when output_dir is set.
AblationResult ablation_delta(const RunConfig& base, const std::vector<double>& deltas,
                              const std::vector<std::string>& problems,
                              const std::vector<std::uint64_t>& seeds, std::size_t jobs = 0,
                              const std::string& output_dir = "");

// "7.1777e-1 (5.50e-4)" style: 4 significant decimals for the mean, 2 for
// the spread, exponents without padding zeros.
std::string format_mean_std(double mean, double std_dev);

}  // namespace llmoea
