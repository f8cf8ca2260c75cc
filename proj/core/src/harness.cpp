#include "llmoea/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace llmoea {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Scientific notation without exponent padding: 7.1777e-1, 5.50e-4.
std::string format_sci(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits, v);
  std::string s(buf);
  const std::size_t e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  const char sign = exponent[0];
  std::size_t i = 1;
  while (i + 1 < exponent.size() && exponent[i] == '0') ++i;
  return mantissa + "e" + sign + exponent.substr(i);
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

std::vector<ObjectiveVector> objectives_of(const Population& pop) {
  std::vector<ObjectiveVector> out;
  out.reserve(pop.size());
  for (const Individual& ind : pop.members) out.push_back(ind.f);
  return out;
}

void validate_config(const RunConfig& c) {
  if (c.population_size < 2) {
    throw std::invalid_argument("run: population size must be at least 2");
  }
  if (c.max_evaluations < c.population_size) {
    throw std::invalid_argument("run: evaluation budget is below one population");
  }
  if (c.elite_count == 0 || c.elite_count > c.population_size) {
    throw std::invalid_argument("run: elite count must be in [1, population size]");
  }
  if (c.offspring_count == 0 || c.offspring_count > c.population_size) {
    throw std::invalid_argument("run: offspring count must be in [1, population size]");
  }
  if (c.retries < 0) throw std::invalid_argument("run: retries must be non-negative");
  if (std::isnan(c.delta)) throw std::invalid_argument("run: delta must not be NaN");
  if (c.front_sample_count < 2) {
    throw std::invalid_argument("run: front sample count must be at least 2");
  }
}

// Threaded map over run configs; rethrows the first failure.
std::vector<RunReport> run_many(const std::vector<RunConfig>& configs, std::size_t jobs) {
  std::vector<RunReport> reports(configs.size());
  if (configs.empty()) return reports;
  std::size_t workers = jobs == 0 ? std::thread::hardware_concurrency() : jobs;
  workers = std::max<std::size_t>(1, std::min(workers, configs.size()));

  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto body = [&] {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= configs.size()) return;
      try {
        reports[i] = run(configs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(body);
    for (std::thread& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return reports;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string metrics_csv(const RunReport& report) {
  std::string out = "generation,evaluations,hv,igd,score,invoked,tokens\n";
  for (const GenerationRecord& r : report.series) {
    out += std::to_string(r.generation);
    out += ',';
    out += std::to_string(r.evaluations);
    out += ',';
    out += fmt_double(r.hv);
    out += ',';
    out += fmt_double(r.igd);
    out += ',';
    out += fmt_double(r.score);
    out += ',';
    out += r.invoked ? '1' : '0';
    out += ',';
    out += std::to_string(r.tokens);
    out += '\n';
  }
  return out;
}

std::string front_csv(const RunReport& report) {
  std::string out;
  const std::size_t m = report.final_front.empty() ? 2 : report.final_front.front().size();
  for (std::size_t k = 0; k < m; ++k) {
    if (k > 0) out += ',';
    out += "f" + std::to_string(k + 1);
  }
  out += '\n';
  for (const ObjectiveVector& p : report.final_front) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k > 0) out += ',';
      out += fmt_double(p[k]);
    }
    out += '\n';
  }
  return out;
}

std::string run_log_jsonl(const RunReport& report) {
  std::ostringstream out;
  {
    json header;
    header["type"] = "config";
    header["problem"] = report.problem;
    header["algorithm"] = to_string(report.config.algorithm);
    header["population_size"] = report.config.population_size;
    header["max_evaluations"] = report.config.max_evaluations;
    header["delta"] = report.config.delta;
    header["elite_count"] = report.config.elite_count;
    header["offspring_count"] = report.config.offspring_count;
    header["retries"] = report.config.retries;
    header["seed"] = report.config.seed;
    header["free_llm_evals"] = report.config.free_llm_evals;
    header["provider"] = report.config.provider.kind == ProviderKind::mock
                             ? "mock"
                             : "http:" + report.config.provider.model;
    header["sbx_eta"] = report.config.variation.sbx_eta;
    header["pm_eta"] = report.config.variation.pm_eta;
    header["mutation_prob_scale"] = report.config.variation.mutation_prob_scale;
    out << header.dump() << '\n';
  }
  for (std::size_t i = 0; i < report.details.size(); ++i) {
    const GenerationDetail& d = report.details[i];
    const GenerationRecord& r = report.series.at(d.generation);
    json line;
    line["type"] = "generation";
    line["generation"] = d.generation;
    line["evaluations"] = r.evaluations;
    line["score"] = r.score;
    line["invoked"] = r.invoked;
    line["tokens"] = r.tokens;
    line["attempts"] = d.attempts;
    line["injected"] = d.injected;
    line["fallback"] = d.fallback;
    json exchanges = json::array();
    for (const Exchange& ex : d.exchanges) {
      json e;
      e["attempt"] = ex.attempt;
      e["ok"] = ex.ok;
      e["prompt_tokens"] = ex.usage.prompt_tokens;
      e["completion_tokens"] = ex.usage.completion_tokens;
      e["latency_ms"] = ex.latency_ms;
      e["prompt"] = ex.prompt;
      e["response"] = ex.response;
      exchanges.push_back(std::move(e));
    }
    line["exchanges"] = std::move(exchanges);
    out << line.dump() << '\n';
  }
  {
    json tail;
    tail["type"] = "summary";
    tail["generations"] = report.series.empty() ? 0 : report.series.back().generation;
    tail["evaluations"] = report.series.empty() ? 0 : report.series.back().evaluations;
    tail["hv"] = report.series.empty() ? 0.0 : report.series.back().hv;
    tail["igd"] = report.series.empty() ? 0.0 : report.series.back().igd;
    tail["total_tokens"] = report.usage.total_tokens;
    tail["provider_calls"] = report.usage.calls;
    tail["provider_failures"] = report.usage.failures;
    tail["invocations"] = report.invocations;
    tail["wall_seconds"] = report.wall_seconds;
    out << tail.dump() << '\n';
  }
  return out.str();
}

std::string convergence_svg(const RunReport& report) {
  const double width = 720, height = 480;
  const double ml = 70, mr = 20, mt = 30, mb = 50;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  if (!report.series.empty()) {
    x_min = static_cast<double>(report.series.front().evaluations);
    x_max = static_cast<double>(report.series.back().evaluations);
    y_min = 0.0;
    y_max = 0.0;
    for (const GenerationRecord& r : report.series) y_max = std::max(y_max, r.hv);
    if (y_max <= 0.0) y_max = 1.0;
    y_max *= 1.05;
  }
  if (x_max <= x_min) x_max = x_min + 1;
  const auto sx = [&](double v) {
    return ml + (v - x_min) / (x_max - x_min) * (width - ml - mr);
  };
  const auto sy = [&](double v) {
    return height - mb - (v - y_min) / (y_max - y_min) * (height - mt - mb);
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  char buf[64];
  for (const GenerationRecord& r : report.series) {
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(static_cast<double>(r.evaluations)),
                  sy(r.hv));
    svg << buf;
  }
  svg << "\"/>\n";
  svg << "<text x=\"" << (width / 2) << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"14\">evaluations</text>\n";
  svg << "<text x=\"18\" y=\"" << (height / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
      << (height / 2) << ")\">hypervolume</text>\n";
  svg << "<text x=\"" << (width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << report.problem << " / " << to_string(report.config.algorithm) << " / seed "
      << report.config.seed << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::nsga2: return "nsga2";
    case Algorithm::nsga2_llm: return "nsga2-llm";
    case Algorithm::nsga2_llm_always: return "nsga2-llm-always";
  }
  return "unknown";
}

std::optional<Algorithm> algorithm_from_string(std::string_view text) {
  if (text == "nsga2") return Algorithm::nsga2;
  if (text == "nsga2-llm") return Algorithm::nsga2_llm;
  if (text == "nsga2-llm-always") return Algorithm::nsga2_llm_always;
  return std::nullopt;
}

std::string format_mean_std(double mean, double std_dev) {
  return format_sci(mean, 4) + " (" + format_sci(std_dev, 2) + ")";
}

RunReport run(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  validate_config(config);

  const ProblemSpec spec = make_problem(config.problem, config.dimension);
  const std::vector<ObjectiveVector> front_samples =
      spec.pf_sampler(config.front_sample_count);
  const MetricContext metric_ctx = make_metric_context(front_samples);

  RunReport report;
  report.config = config;
  report.problem = spec.name;

  std::unique_ptr<Provider> provider;
  if (config.algorithm != Algorithm::nsga2) {
    ProviderConfig pc = config.provider;
    pc.mock_offspring = config.offspring_count;
    pc.mock_lower = spec.lower;
    pc.mock_upper = spec.upper;
    provider = make_provider(pc);  // fail fast before any evaluation
  }

  RngStream rng(config.seed);
  Population pop = initialize_population(spec, config.population_size, rng);
  evaluate(spec, pop);

  GateState gate(config.delta);
  std::size_t cumulative_tokens = 0;

  const auto snapshot = [&](double score, bool invoked) {
    GenerationRecord r;
    r.generation = pop.generation;
    r.evaluations = pop.evaluations_used;
    const std::vector<ObjectiveVector> front = nondominated_subset(objectives_of(pop));
    r.hv = hypervolume(front, metric_ctx);
    r.igd = igd(front, front_samples);
    r.score = score;
    r.invoked = invoked;
    r.tokens = cumulative_tokens;
    report.series.push_back(std::move(r));
  };
  snapshot(0.0, false);

  const std::size_t cap =
      config.generation_cap != 0
          ? config.generation_cap
          : std::max<std::size_t>(1, 2 * config.max_evaluations / config.population_size);

  for (std::size_t g = 1; g <= cap; ++g) {
    FrontPartition partition = fast_nondominated_sort(pop);
    crowding_distance(pop, partition);
    const double score = auxiliary_score(pop, partition);

    bool want_llm = false;
    switch (config.algorithm) {
      case Algorithm::nsga2: break;
      case Algorithm::nsga2_llm: want_llm = gate.would_invoke(score); break;
      case Algorithm::nsga2_llm_always: want_llm = true; break;
    }

    // The whole generation must fit the budget before any of it runs.
    const std::size_t extra =
        (want_llm && !config.free_llm_evals) ? config.offspring_count : 0;
    if (pop.evaluations_used + config.population_size + extra > config.max_evaluations) {
      break;
    }
    gate.record(score, want_llm);

    Population offspring;
    GenerationDetail detail;
    detail.generation = g;
    if (want_llm) {
      LlmVariationOptions options;
      options.elite_count = config.elite_count;
      options.offspring_count = config.offspring_count;
      options.retries = config.retries;
      options.charge_injected_evals = !config.free_llm_evals;
      LlmVariationStats stats;
      offspring = llm_variation(pop, spec, config.variation, *provider, options, rng, &stats);
      detail.attempts = stats.attempts;
      detail.injected = stats.injected;
      detail.fallback = stats.fallback;
      detail.exchanges = std::move(stats.exchanges);
      for (const Exchange& ex : detail.exchanges) cumulative_tokens += ex.usage.total();
      ++report.invocations;
    } else {
      offspring = plain_variation(pop, spec, config.variation, rng);
    }
    evaluate(spec, offspring);

    Population merged;
    merged.members = pop.members;
    merged.members.insert(merged.members.end(), offspring.members.begin(),
                          offspring.members.end());
    merged.generation = pop.generation;
    merged.evaluations_used = offspring.evaluations_used;
    merged.next_id = offspring.next_id;
    pop = environmental_selection(std::move(merged), config.population_size);

    if (want_llm || !detail.exchanges.empty()) report.details.push_back(std::move(detail));
    snapshot(score, want_llm);
  }

  report.gate_history = gate.history();
  report.final_population = pop;
  report.final_front = nondominated_subset(objectives_of(pop));
  std::vector<Exchange> all_exchanges;
  for (const GenerationDetail& d : report.details) {
    all_exchanges.insert(all_exchanges.end(), d.exchanges.begin(), d.exchanges.end());
  }
  report.usage = usage_report(all_exchanges);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (!config.output_dir.empty()) emit_outputs(report, config.output_dir);
  return report;
}

void emit_outputs(const RunReport& report, const std::string& directory) {
  const std::filesystem::path dir(directory);
  std::filesystem::create_directories(dir);
  write_file(dir / "metrics.csv", metrics_csv(report));
  write_file(dir / "final_front.csv", front_csv(report));
  write_file(dir / "run_log.jsonl", run_log_jsonl(report));
  if (report.config.emit_plot) {
    write_file(dir / "convergence.svg", convergence_svg(report));
  }
}

BatchResult run_batch(const RunConfig& base, const std::vector<std::string>& problems,
                      const std::vector<Algorithm>& algorithms,
                      const std::vector<std::uint64_t>& seeds, std::size_t jobs,
                      const std::string& output_dir) {
  if (problems.empty() || algorithms.empty() || seeds.empty()) {
    throw std::invalid_argument("run_batch: problems, algorithms and seeds must be non-empty");
  }
  std::vector<RunConfig> configs;
  configs.reserve(problems.size() * algorithms.size() * seeds.size());
  for (const std::string& problem : problems) {
    for (Algorithm algorithm : algorithms) {
      for (std::uint64_t seed : seeds) {
        RunConfig c = base;
        c.problem = problem;
        c.algorithm = algorithm;
        c.seed = seed;
        if (!output_dir.empty()) {
          c.output_dir = output_dir + "/" + problem + "_" + to_string(algorithm) + "_s" +
                         std::to_string(seed);
        } else {
          c.output_dir.clear();
        }
        configs.push_back(std::move(c));
      }
    }
  }

  const std::vector<RunReport> reports = run_many(configs, jobs);

  BatchResult result;
  result.items.reserve(reports.size());
  for (const RunReport& r : reports) {
    BatchItem item;
    item.problem = r.problem;
    item.algorithm = r.config.algorithm;
    item.seed = r.config.seed;
    item.hv = r.series.back().hv;
    item.igd = r.series.back().igd;
    item.tokens = r.series.back().tokens;
    item.invocations = r.invocations;
    item.evaluations = r.series.back().evaluations;
    item.generations = r.series.back().generation;
    result.items.push_back(std::move(item));
  }

  std::size_t idx = 0;
  for (const std::string& problem : problems) {
    for (Algorithm algorithm : algorithms) {
      std::vector<double> hvs, igds, tokens, invocations;
      for (std::size_t s = 0; s < seeds.size(); ++s, ++idx) {
        const BatchItem& item = result.items[idx];
        hvs.push_back(item.hv);
        igds.push_back(item.igd);
        tokens.push_back(static_cast<double>(item.tokens));
        invocations.push_back(static_cast<double>(item.invocations));
      }
      BatchRow row;
      row.problem = result.items[idx - 1].problem;
      row.algorithm = algorithm;
      row.runs = seeds.size();
      row.hv_mean = mean_of(hvs);
      row.hv_std = sample_std(hvs);
      row.igd_mean = mean_of(igds);
      row.igd_std = sample_std(igds);
      row.tokens_mean = mean_of(tokens);
      row.invocations_mean = mean_of(invocations);
      result.rows.push_back(std::move(row));
    }
  }

  if (!output_dir.empty()) {
    std::filesystem::create_directories(output_dir);
    std::string runs = "problem,algorithm,seed,hv,igd,tokens,invocations,evaluations,generations\n";
    for (const BatchItem& item : result.items) {
      runs += item.problem + "," + to_string(item.algorithm) + "," + std::to_string(item.seed) +
              "," + fmt_double(item.hv) + "," + fmt_double(item.igd) + "," +
              std::to_string(item.tokens) + "," + std::to_string(item.invocations) + "," +
              std::to_string(item.evaluations) + "," + std::to_string(item.generations) + "\n";
    }
    write_file(std::filesystem::path(output_dir) / "runs.csv", runs);

    std::string summary =
        "problem,algorithm,runs,hv_mean,hv_std,igd_mean,igd_std,tokens_mean,invocations_mean\n";
    for (const BatchRow& row : result.rows) {
      summary += row.problem + "," + to_string(row.algorithm) + "," + std::to_string(row.runs) +
                 "," + fmt_double(row.hv_mean) + "," + fmt_double(row.hv_std) + "," +
                 fmt_double(row.igd_mean) + "," + fmt_double(row.igd_std) + "," +
                 fmt_double(row.tokens_mean) + "," + fmt_double(row.invocations_mean) + "\n";
    }
    write_file(std::filesystem::path(output_dir) / "summary.csv", summary);
  }
  return result;
}

AblationResult ablation_delta(const RunConfig& base, const std::vector<double>& deltas,
                              const std::vector<std::string>& problems,
                              const std::vector<std::uint64_t>& seeds, std::size_t jobs,
                              const std::string& output_dir) {
  if (deltas.empty() || problems.empty() || seeds.empty()) {
    throw std::invalid_argument("ablation_delta: deltas, problems and seeds must be non-empty");
  }
  std::vector<RunConfig> configs;
  configs.reserve(deltas.size() * problems.size() * seeds.size());
  for (double delta : deltas) {
    for (const std::string& problem : problems) {
      for (std::uint64_t seed : seeds) {
        RunConfig c = base;
        c.algorithm = Algorithm::nsga2_llm;
        c.delta = delta;
        c.problem = problem;
        c.seed = seed;
        c.output_dir.clear();
        configs.push_back(std::move(c));
      }
    }
  }

  const std::vector<RunReport> reports = run_many(configs, jobs);

  AblationResult result;
  result.cells.reserve(reports.size());
  std::size_t idx = 0;
  for (double delta : deltas) {
    std::vector<double> tokens, igds, invocations;
    for (std::size_t p = 0; p < problems.size(); ++p) {
      for (std::size_t s = 0; s < seeds.size(); ++s, ++idx) {
        const RunReport& r = reports[idx];
        AblationCell cell;
        cell.delta = delta;
        cell.problem = r.problem;
        cell.seed = r.config.seed;
        cell.igd = r.series.back().igd;
        cell.tokens = r.series.back().tokens;
        cell.invocations = r.invocations;
        tokens.push_back(static_cast<double>(cell.tokens));
        igds.push_back(cell.igd);
        invocations.push_back(static_cast<double>(cell.invocations));
        result.cells.push_back(std::move(cell));
      }
    }
    AblationRow row;
    row.delta = delta;
    row.tokens_mean = mean_of(tokens);
    row.igd_mean = mean_of(igds);
    row.invocations_mean = mean_of(invocations);
    result.rows.push_back(row);
  }

  if (!output_dir.empty()) {
    std::filesystem::create_directories(output_dir);
    std::string rows = "delta,tokens_mean,igd_mean,invocations_mean\n";
    for (const AblationRow& row : result.rows) {
      rows += fmt_double(row.delta) + "," + fmt_double(row.tokens_mean) + "," +
              fmt_double(row.igd_mean) + "," + fmt_double(row.invocations_mean) + "\n";
    }
    write_file(std::filesystem::path(output_dir) / "ablation.csv", rows);

    std::string cells = "delta,problem,seed,igd,tokens,invocations\n";
    for (const AblationCell& cell : result.cells) {
      cells += fmt_double(cell.delta) + "," + cell.problem + "," + std::to_string(cell.seed) +
               "," + fmt_double(cell.igd) + "," + std::to_string(cell.tokens) + "," +
               std::to_string(cell.invocations) + "\n";
    }
    write_file(std::filesystem::path(output_dir) / "cells.csv", cells);
  }
  return result;
}

}  // namespace llmoea
