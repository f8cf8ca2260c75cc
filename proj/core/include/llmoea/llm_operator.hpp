#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "llmoea/core.hpp"
#include "llmoea/nsga2.hpp"
#include "llmoea/providers.hpp"

namespace llmoea {

// count independent binary tournaments with replacement. Members keep the
// rank/crowding they carried in pop.
std::vector<Individual> build_mating_pool(const Population& pop, std::size_t count,
                                          RngStream& rng);

struct ElitePool {
  std::vector<Individual> members;                       // most frequent first
  std::unordered_map<std::uint64_t, std::size_t> frequency;  // pool-wide id counts
};

// Top-count pool members by occurrence frequency; ties broken by rank, then
// crowding, then id. Returns fewer when the pool has fewer distinct members.
ElitePool select_elites(const std::vector<Individual>& pool, std::size_t count);

// Four prompt blocks rendered in order. The context block lists each elite as
// a delimiter-framed decision vector plus its objective values, three
// decimals everywhere.
struct PromptBundle {
  std::string identity;
  std::string task;
  std::string context;
  std::string expectation;
  std::string rendered;
};

PromptBundle build_prompt(const ElitePool& elites, const ProblemSpec& spec,
                          std::size_t offspring_count);

enum class ParseDefect { missing_delimiters, wrong_arity, non_numeric, too_few };

struct ParsedOffspring {
  std::vector<DecisionVector> vectors;  // clipped to the problem box
  std::string raw_response;
};

struct ParseFailure {
  ParseDefect defect = ParseDefect::missing_delimiters;
  std::string detail;
};

const char* to_string(ParseDefect defect);

// Extracts delimiter-framed vectors from free-form text. Succeeds when at
// least offspring_count spans parse as finite vectors of the right arity;
// extra valid spans beyond the first offspring_count are dropped.
std::variant<ParsedOffspring, ParseFailure> parse_response(const std::string& text,
                                                           const ProblemSpec& spec,
                                                           std::size_t offspring_count);

// Overwrites pool slots with the offspring: duplicate occurrences first
// (most frequent id first, earliest slot first), then the worst slots by
// descending rank and ascending crowding. Pool size is unchanged.
void inject_offspring(std::vector<Individual>& pool,
                      const std::vector<Individual>& offspring);

struct LlmVariationOptions {
  std::size_t elite_count = 5;
  std::size_t offspring_count = 3;
  int retries = 3;                    // extra attempts after the first
  bool charge_injected_evals = true;  // count offspring against the budget
};

struct LlmVariationStats {
  int attempts = 0;                // provider calls made
  std::size_t injected = 0;        // offspring accepted into the pool
  bool fallback = false;           // all attempts failed, plain pool used
  std::vector<Exchange> exchanges; // one entry per attempt
};

// One generator-assisted variation step: tournament pool, elite prompt, up to
// 1 + retries provider attempts (fresh single-message session each), parsed
// offspring evaluated and injected, then SBX/mutation over the pool. Any
// provider or parse failure after the last retry degrades to the unmodified
// pool. Returns pop.size() unevaluated children; pop's evaluation counter is
// charged for injected offspring when configured.
Population llm_variation(Population& pop, const ProblemSpec& spec,
                         const VariationParams& params, Provider& provider,
                         const LlmVariationOptions& options, RngStream& rng,
                         LlmVariationStats* stats = nullptr);

// The plain path: tournament pool straight into SBX/mutation.
Population plain_variation(const Population& pop, const ProblemSpec& spec,
                           const VariationParams& params, RngStream& rng);

}  // namespace llmoea
