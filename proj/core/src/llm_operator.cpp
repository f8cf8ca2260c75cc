#include "llmoea/llm_operator.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "llmoea/prompt_grammar.hpp"

namespace llmoea {

namespace {

double clip(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace

std::vector<Individual> build_mating_pool(const Population& pop, std::size_t count,
                                          RngStream& rng) {
  if (pop.size() == 0) throw std::invalid_argument("build_mating_pool: empty population");
  std::vector<Individual> pool;
  pool.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    pool.push_back(binary_tournament_select(pop, rng));
  }
  return pool;
}

ElitePool select_elites(const std::vector<Individual>& pool, std::size_t count) {
  if (pool.empty()) throw std::invalid_argument("select_elites: empty pool");
  ElitePool elites;
  std::vector<const Individual*> distinct;
  for (const Individual& ind : pool) {
    auto [it, inserted] = elites.frequency.try_emplace(ind.id, 0);
    ++it->second;
    if (inserted) distinct.push_back(&ind);
  }
  std::sort(distinct.begin(), distinct.end(),
            [&](const Individual* a, const Individual* b) {
              const std::size_t fa = elites.frequency.at(a->id);
              const std::size_t fb = elites.frequency.at(b->id);
              if (fa != fb) return fa > fb;
              if (a->rank != b->rank) return a->rank < b->rank;
              if (a->crowding != b->crowding) return a->crowding > b->crowding;
              return a->id < b->id;
            });
  const std::size_t take = std::min(count, distinct.size());
  elites.members.reserve(take);
  for (std::size_t i = 0; i < take; ++i) elites.members.push_back(*distinct[i]);
  return elites;
}

PromptBundle build_prompt(const ElitePool& elites, const ProblemSpec& spec,
                          std::size_t offspring_count) {
  if (elites.members.empty()) throw std::invalid_argument("build_prompt: no elites");
  for (const Individual& ind : elites.members) {
    if (!ind.evaluated()) throw std::invalid_argument("build_prompt: unevaluated elite");
  }

  PromptBundle bundle;
  bundle.identity = "You are an expert in multi-objective optimization algorithms.";
  {
    std::ostringstream task;
    task << "Your task is to generate improved solutions with better objective values"
         << " through given solutions. I have several solutions, all of which are in"
         << " the form of " << spec.dimension
         << " dimensional decision vectors for a minimization problem with "
         << spec.objectives << " objectives.";
    bundle.task = task.str();
  }
  {
    std::ostringstream context;
    context << "The following is the initial solution in the mating pool.\n";
    for (const Individual& ind : elites.members) {
      context << "solution: " << grammar::format_solution_line(ind.x) << "\n obj_value: "
              << grammar::format_components(ind.f) << "\n";
    }
    bundle.context = context.str();
  }
  {
    std::ostringstream expectation;
    expectation << "You can use these multi-objective optimization algorithms to generate"
                << " new solutions (one or more algorithms can be used). Simply output "
                << offspring_count << " new solutions with better objective values."
                << " Each solution must start with " << grammar::kStartToken
                << " and end with " << grammar::kEndToken << ".";
    bundle.expectation = expectation.str();
  }
  bundle.rendered =
      bundle.identity + "\n" + bundle.task + "\n" + bundle.context + bundle.expectation + "\n";
  return bundle;
}

const char* to_string(ParseDefect defect) {
  switch (defect) {
    case ParseDefect::missing_delimiters: return "missing_delimiters";
    case ParseDefect::wrong_arity: return "wrong_arity";
    case ParseDefect::non_numeric: return "non_numeric";
    case ParseDefect::too_few: return "too_few";
  }
  return "unknown";
}

std::variant<ParsedOffspring, ParseFailure> parse_response(const std::string& text,
                                                           const ProblemSpec& spec,
                                                           std::size_t offspring_count) {
  const auto spans = grammar::extract_spans(text);
  if (spans.empty()) {
    return ParseFailure{ParseDefect::missing_delimiters, "no delimiter-framed spans in response"};
  }

  ParsedOffspring parsed;
  parsed.raw_response = text;
  bool have_defect = false;
  ParseFailure first_defect;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (parsed.vectors.size() == offspring_count) break;
    std::string error;
    auto values = grammar::parse_components(spans[i].body, &error);
    if (!values) {
      if (!have_defect) {
        have_defect = true;
        std::ostringstream detail;
        detail << "span " << i + 1 << ": " << error;
        first_defect = {ParseDefect::non_numeric, detail.str()};
      }
      continue;
    }
    if (values->size() != spec.dimension) {
      if (!have_defect) {
        have_defect = true;
        std::ostringstream detail;
        detail << "span " << i + 1 << ": got " << values->size() << " components, expected "
               << spec.dimension;
        first_defect = {ParseDefect::wrong_arity, detail.str()};
      }
      continue;
    }
    for (std::size_t k = 0; k < values->size(); ++k) {
      (*values)[k] = clip((*values)[k], spec.lower[k], spec.upper[k]);
    }
    parsed.vectors.push_back(std::move(*values));
  }

  if (parsed.vectors.size() < offspring_count) {
    if (have_defect) return first_defect;
    std::ostringstream detail;
    detail << "only " << parsed.vectors.size() << " valid solutions, need " << offspring_count;
    return ParseFailure{ParseDefect::too_few, detail.str()};
  }
  return parsed;
}

void inject_offspring(std::vector<Individual>& pool,
                      const std::vector<Individual>& offspring) {
  if (offspring.empty()) return;
  if (offspring.size() > pool.size()) {
    throw std::invalid_argument("inject_offspring: more offspring than pool slots");
  }

  std::unordered_map<std::uint64_t, std::size_t> frequency;
  for (const Individual& ind : pool) ++frequency[ind.id];

  // Second and later occurrences of an id are redundant slots.
  std::vector<std::size_t> duplicates;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  for (std::size_t slot = 0; slot < pool.size(); ++slot) {
    if (++seen[pool[slot].id] >= 2) duplicates.push_back(slot);
  }
  std::stable_sort(duplicates.begin(), duplicates.end(),
                   [&](std::size_t a, std::size_t b) {
                     return frequency.at(pool[a].id) > frequency.at(pool[b].id);
                   });

  std::vector<std::size_t> targets;
  std::vector<bool> taken(pool.size(), false);
  for (std::size_t slot : duplicates) {
    if (targets.size() == offspring.size()) break;
    targets.push_back(slot);
    taken[slot] = true;
  }
  if (targets.size() < offspring.size()) {
    std::vector<std::size_t> rest;
    for (std::size_t slot = 0; slot < pool.size(); ++slot) {
      if (!taken[slot]) rest.push_back(slot);
    }
    std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
      const Individual& ia = pool[a];
      const Individual& ib = pool[b];
      if (ia.rank != ib.rank) return ia.rank > ib.rank;
      if (ia.crowding != ib.crowding) return ia.crowding < ib.crowding;
      return ia.id > ib.id;
    });
    for (std::size_t slot : rest) {
      if (targets.size() == offspring.size()) break;
      targets.push_back(slot);
    }
  }

  for (std::size_t k = 0; k < offspring.size(); ++k) {
    pool[targets[k]] = offspring[k];
  }
}

Population llm_variation(Population& pop, const ProblemSpec& spec,
                         const VariationParams& params, Provider& provider,
                         const LlmVariationOptions& options, RngStream& rng,
                         LlmVariationStats* stats) {
  LlmVariationStats local;
  LlmVariationStats& st = stats ? *stats : local;
  st = LlmVariationStats{};

  std::vector<Individual> pool = build_mating_pool(pop, pop.size(), rng);
  const ElitePool elites = select_elites(pool, options.elite_count);
  const PromptBundle prompt = build_prompt(elites, spec, options.offspring_count);

  std::optional<ParsedOffspring> parsed;
  for (int attempt = 1; attempt <= options.retries + 1; ++attempt) {
    Exchange exchange;
    exchange.attempt = attempt;
    exchange.prompt = prompt.rendered;
    ++st.attempts;
    Completion completion;
    try {
      completion = provider.complete(prompt.rendered);
    } catch (const TransportError&) {
      st.exchanges.push_back(std::move(exchange));
      continue;
    }
    exchange.response = completion.text;
    exchange.usage = completion.usage;
    exchange.latency_ms = completion.latency_ms;
    auto result = parse_response(completion.text, spec, options.offspring_count);
    if (std::holds_alternative<ParsedOffspring>(result)) {
      exchange.ok = true;
      st.exchanges.push_back(std::move(exchange));
      parsed = std::get<ParsedOffspring>(std::move(result));
      break;
    }
    st.exchanges.push_back(std::move(exchange));
  }

  std::uint64_t next_id = pop.next_id;
  if (parsed) {
    std::vector<Individual> offspring;
    offspring.reserve(parsed->vectors.size());
    for (DecisionVector& x : parsed->vectors) {
      Individual ind;
      ind.x = std::move(x);
      ind.id = next_id++;
      evaluate_individual(spec, ind);
      offspring.push_back(std::move(ind));
    }
    if (options.charge_injected_evals) pop.evaluations_used += offspring.size();
    inject_offspring(pool, offspring);
    st.injected = offspring.size();
  } else {
    st.fallback = true;
  }

  Population q;
  q.members = breed_pool(pool, spec, params, rng, next_id);
  q.generation = pop.generation;
  q.evaluations_used = pop.evaluations_used;
  q.next_id = next_id;
  pop.next_id = next_id;
  return q;
}

Population plain_variation(const Population& pop, const ProblemSpec& spec,
                           const VariationParams& params, RngStream& rng) {
  std::vector<Individual> pool = build_mating_pool(pop, pop.size(), rng);
  std::uint64_t next_id = pop.next_id;
  Population q;
  q.members = breed_pool(pool, spec, params, rng, next_id);
  q.generation = pop.generation;
  q.evaluations_used = pop.evaluations_used;
  q.next_id = next_id;
  return q;
}

}  // namespace llmoea
