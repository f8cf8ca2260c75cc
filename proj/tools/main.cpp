// Command line front end: single runs, seed/problem batches and gate
// threshold sweeps on top of the library.

#include <cctype>
#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "llmoea/harness.hpp"

namespace {

using namespace llmoea;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      if (!current.empty()) parts.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current.push_back(c);
    }
  }
  if (!current.empty()) parts.push_back(current);
  return parts;
}

// "1..10" or "3" per comma-separated token.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& token : split(text, ',')) {
    const std::size_t dots = token.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(std::stoull(token));
      continue;
    }
    const std::uint64_t lo = std::stoull(token.substr(0, dots));
    const std::uint64_t hi = std::stoull(token.substr(dots + 2));
    if (hi < lo) throw CLI::ValidationError("--seeds", "descending range " + token);
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
  return seeds;
}

// "ZDT1,UF1..UF10" with ranges over a shared alphabetic prefix.
std::vector<std::string> parse_problems(const std::string& text) {
  std::vector<std::string> problems;
  for (const std::string& token : split(text, ',')) {
    const std::size_t dots = token.find("..");
    if (dots == std::string::npos) {
      problems.push_back(token);
      continue;
    }
    const std::string first = token.substr(0, dots);
    const std::string second = token.substr(dots + 2);
    std::size_t p = 0;
    while (p < first.size() && !std::isdigit(static_cast<unsigned char>(first[p]))) ++p;
    std::size_t q = 0;
    while (q < second.size() && !std::isdigit(static_cast<unsigned char>(second[q]))) ++q;
    const std::string prefix = first.substr(0, p);
    if (p == first.size() || q == second.size() ||
        (q > 0 && second.substr(0, q) != prefix)) {
      throw CLI::ValidationError("--problems", "cannot expand range " + token);
    }
    const unsigned long lo = std::stoul(first.substr(p));
    const unsigned long hi = std::stoul(second.substr(q));
    if (hi < lo) throw CLI::ValidationError("--problems", "descending range " + token);
    for (unsigned long i = lo; i <= hi; ++i) {
      problems.push_back(prefix + std::to_string(i));
    }
  }
  if (problems.empty()) throw CLI::ValidationError("--problems", "no problems given");
  return problems;
}

std::vector<double> parse_deltas(const std::string& text) {
  std::vector<double> deltas;
  for (const std::string& token : split(text, ',')) {
    deltas.push_back(std::stod(token));
  }
  if (deltas.empty()) throw CLI::ValidationError("--deltas", "no deltas given");
  return deltas;
}

struct CommonOpts {
  std::string problem = "ZDT1";
  std::string algo = "nsga2-llm";
  std::size_t pop = 100;
  std::size_t evals = 10000;
  double delta = 0.1;
  std::size_t elites = 5;
  std::size_t offspring = 3;
  int retries = 3;
  std::uint64_t seed = 1;
  std::string provider = "mock";
  std::string model;
  std::string api_base;
  std::string api_key_env = "LLMOEA_API_KEY";
  double timeout = 60.0;
  double temperature = 1.0;
  bool mock_fault = false;
  bool free_llm_evals = false;
  std::string out;
  bool plot = false;
  std::size_t pf_points = 10000;
  std::size_t dim = 0;
  std::size_t gen_cap = 0;
  double sbx_eta = 20.0;
  double pm_eta = 20.0;
  double tau = 1.0;
  double cx_prob = 1.0;
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--problem", o.problem, "Benchmark problem (ZDT1-4, ZDT6, UF1-10)")
      ->capture_default_str();
  cmd->add_option("--algo", o.algo, "nsga2, nsga2-llm or nsga2-llm-always")
      ->capture_default_str();
  cmd->add_option("--pop", o.pop, "Population size")->capture_default_str();
  cmd->add_option("--evals", o.evals, "Objective evaluation budget")->capture_default_str();
  cmd->add_option("--delta", o.delta, "Score improvement needed to invoke the LLM (inf disables)")
      ->capture_default_str();
  cmd->add_option("--l", o.elites, "Elite solutions shown in the prompt")->capture_default_str();
  cmd->add_option("--s", o.offspring, "Solutions requested per invocation")
      ->capture_default_str();
  cmd->add_option("--retries", o.retries, "Provider attempts beyond the first")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--provider", o.provider, "mock or http")->capture_default_str();
  cmd->add_option("--model", o.model, "Model id for the http provider");
  cmd->add_option("--api-base", o.api_base, "Base URL for the http provider");
  cmd->add_option("--api-key-env", o.api_key_env,
                  "Environment variable holding the API key")
      ->capture_default_str();
  cmd->add_option("--timeout", o.timeout, "Provider timeout in seconds")->capture_default_str();
  cmd->add_option("--temperature", o.temperature, "Sampling temperature for the http provider")
      ->capture_default_str();
  cmd->add_flag("--mock-fault", o.mock_fault, "Make the mock provider return malformed text");
  cmd->add_flag("--free-llm-evals", o.free_llm_evals,
                "Do not charge injected offspring to the budget");
  cmd->add_option("--out", o.out, "Output directory for run artifacts");
  cmd->add_flag("--plot", o.plot, "Also write convergence.svg");
  cmd->add_option("--pf-points", o.pf_points, "True-front sample count for metrics")
      ->capture_default_str();
  cmd->add_option("--dim", o.dim, "Override the problem dimension");
  cmd->add_option("--gen-cap", o.gen_cap, "Hard generation cap (0 = auto)");
  cmd->add_option("--sbx-eta", o.sbx_eta, "SBX distribution index")->capture_default_str();
  cmd->add_option("--pm-eta", o.pm_eta, "Mutation distribution index")->capture_default_str();
  cmd->add_option("--tau", o.tau, "Mutation probability scale (tau/d per variable)")
      ->capture_default_str();
  cmd->add_option("--cx-prob", o.cx_prob, "SBX pair probability")->capture_default_str();
}

RunConfig to_run_config(const CommonOpts& o) {
  RunConfig c;
  c.problem = o.problem;
  const auto algo = algorithm_from_string(o.algo);
  if (!algo) throw CLI::ValidationError("--algo", "unknown algorithm " + o.algo);
  c.algorithm = *algo;
  c.population_size = o.pop;
  c.max_evaluations = o.evals;
  c.delta = o.delta;
  c.elite_count = o.elites;
  c.offspring_count = o.offspring;
  c.retries = o.retries;
  c.seed = o.seed;
  c.free_llm_evals = o.free_llm_evals;
  c.front_sample_count = o.pf_points;
  if (o.dim > 0) c.dimension = o.dim;
  c.generation_cap = o.gen_cap;
  c.variation.sbx_eta = o.sbx_eta;
  c.variation.pm_eta = o.pm_eta;
  c.variation.mutation_prob_scale = o.tau;
  c.variation.crossover_prob = o.cx_prob;
  c.output_dir = o.out;
  c.emit_plot = o.plot;
  if (o.provider == "mock") {
    c.provider.kind = ProviderKind::mock;
  } else if (o.provider == "http") {
    c.provider.kind = ProviderKind::http_chat;
  } else {
    throw CLI::ValidationError("--provider", "unknown provider " + o.provider);
  }
  c.provider.model = o.model;
  c.provider.api_base = o.api_base;
  c.provider.api_key_env = o.api_key_env;
  c.provider.timeout_seconds = o.timeout;
  c.provider.temperature = o.temperature;
  c.provider.mock_fault_injection = o.mock_fault;
  return c;
}

int do_run(const CommonOpts& opts) {
  const RunReport report = run(to_run_config(opts));
  const GenerationRecord& last = report.series.back();
  std::printf("problem=%s algorithm=%s seed=%llu\n", report.problem.c_str(),
              to_string(report.config.algorithm).c_str(),
              static_cast<unsigned long long>(report.config.seed));
  std::printf("generations=%zu evaluations=%zu\n", last.generation, last.evaluations);
  std::printf("hv=%.6f igd=%.6f\n", last.hv, last.igd);
  std::printf("invocations=%zu tokens=%zu provider_failures=%zu\n", report.invocations,
              last.tokens, report.usage.failures);
  std::printf("wall_seconds=%.2f\n", report.wall_seconds);
  if (!report.config.output_dir.empty()) {
    std::printf("artifacts: %s\n", report.config.output_dir.c_str());
  }
  return 0;
}

int do_batch(const CommonOpts& opts, const std::string& problems_text,
             const std::string& algos_text, const std::string& seeds_text,
             std::size_t jobs) {
  const RunConfig base = to_run_config(opts);
  const std::vector<std::string> problems = parse_problems(problems_text);
  std::vector<Algorithm> algorithms;
  for (const std::string& name : split(algos_text, ',')) {
    const auto algo = algorithm_from_string(name);
    if (!algo) throw CLI::ValidationError("--algos", "unknown algorithm " + name);
    algorithms.push_back(*algo);
  }
  const std::vector<std::uint64_t> seeds = parse_seeds(seeds_text);

  const BatchResult result = run_batch(base, problems, algorithms, seeds, jobs, opts.out);
  std::printf("%-8s %-18s %4s  %-22s %-22s %12s %12s\n", "problem", "algorithm", "runs",
              "hv mean (std)", "igd mean (std)", "tokens", "invocations");
  for (const BatchRow& row : result.rows) {
    std::printf("%-8s %-18s %4zu  %-22s %-22s %12.1f %12.2f\n", row.problem.c_str(),
                to_string(row.algorithm).c_str(), row.runs,
                format_mean_std(row.hv_mean, row.hv_std).c_str(),
                format_mean_std(row.igd_mean, row.igd_std).c_str(), row.tokens_mean,
                row.invocations_mean);
  }
  if (!opts.out.empty()) std::printf("artifacts: %s\n", opts.out.c_str());
  return 0;
}

int do_ablate(const CommonOpts& opts, const std::string& deltas_text,
              const std::string& problems_text, const std::string& seeds_text,
              std::size_t jobs) {
  const RunConfig base = to_run_config(opts);
  const AblationResult result =
      ablation_delta(base, parse_deltas(deltas_text), parse_problems(problems_text),
                     parse_seeds(seeds_text), jobs, opts.out);
  std::printf("%10s %14s %14s %14s\n", "delta", "tokens mean", "igd mean", "invocations");
  for (const AblationRow& row : result.rows) {
    std::printf("%10.4g %14.1f %14.6f %14.2f\n", row.delta, row.tokens_mean, row.igd_mean,
                row.invocations_mean);
  }
  if (!opts.out.empty()) std::printf("artifacts: %s\n", opts.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NSGA-II with a score-gated LLM variation operator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a config file (sections per subcommand)");

  CommonOpts run_opts;
  CLI::App* cmd_run = app.add_subcommand("run", "Execute one optimization run");
  add_common_options(cmd_run, run_opts);

  CommonOpts batch_opts;
  std::string batch_problems = "ZDT1,ZDT2,ZDT3,ZDT4,ZDT6,UF1..UF10";
  std::string batch_algos = "nsga2,nsga2-llm";
  std::string batch_seeds = "1..10";
  std::size_t batch_jobs = 0;
  CLI::App* cmd_batch = app.add_subcommand("batch", "Run a problems x algorithms x seeds grid");
  add_common_options(cmd_batch, batch_opts);
  cmd_batch->add_option("--problems", batch_problems, "Comma list, ranges like UF1..UF10")
      ->capture_default_str();
  cmd_batch->add_option("--algos", batch_algos, "Comma list of algorithms")
      ->capture_default_str();
  cmd_batch->add_option("--seeds", batch_seeds, "Comma list, ranges like 1..10")
      ->capture_default_str();
  cmd_batch->add_option("--jobs", batch_jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();

  CommonOpts ablate_opts;
  std::string ablate_deltas = "0.01,0.05,0.1,0.5,1";
  std::string ablate_problems = "UF1,UF2,UF3";
  std::string ablate_seeds = "1..3";
  std::size_t ablate_jobs = 0;
  CLI::App* cmd_ablate = app.add_subcommand("ablate", "Sweep the gate threshold delta");
  add_common_options(cmd_ablate, ablate_opts);
  cmd_ablate->add_option("--deltas", ablate_deltas, "Comma list of thresholds")
      ->capture_default_str();
  cmd_ablate->add_option("--problems", ablate_problems, "Comma list, ranges like UF1..UF3")
      ->capture_default_str();
  cmd_ablate->add_option("--seeds", ablate_seeds, "Comma list, ranges like 1..3")
      ->capture_default_str();
  cmd_ablate->add_option("--jobs", ablate_jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) return do_run(run_opts);
    if (cmd_batch->parsed()) {
      return do_batch(batch_opts, batch_problems, batch_algos, batch_seeds, batch_jobs);
    }
    if (cmd_ablate->parsed()) {
      return do_ablate(ablate_opts, ablate_deltas, ablate_problems, ablate_seeds, ablate_jobs);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
