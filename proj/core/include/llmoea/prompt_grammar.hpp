#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace llmoea::grammar {

// Single definition of the solution-line wire format. Prompt builder,
// response parser and the offline provider all go through these helpers so
// the two sides cannot drift apart.

inline constexpr std::string_view kStartToken = "<start>";
inline constexpr std::string_view kEndToken = "<end>";
inline constexpr std::string_view kObjectiveLabel = "obj_value:";

// "0.322,0.947,..." with three decimals per component.
std::string format_components(std::span<const double> values);

// "<start>0.322,0.947<end>"
std::string format_solution_line(std::span<const double> x);

struct Span {
  std::string body;        // text between the delimiters
  std::size_t begin = 0;   // offset of kStartToken in the source text
};

// Every <start>...<end> span in order of appearance. A dangling start token
// without a matching end is ignored.
std::vector<Span> extract_spans(std::string_view text);

// Comma-separated finite doubles; surrounding whitespace per token is
// tolerated. Returns nullopt and fills `error` on any malformed token.
std::optional<std::vector<double>> parse_components(std::string_view body,
                                                    std::string* error);

struct ExampleSolution {
  std::vector<double> x;
  std::vector<double> objectives;
};

// Reads back the solution/objective pairs of a built prompt: each numeric
// span plus the obj_value line that follows it before the next span. Spans
// that do not parse as numbers (e.g. prose mentioning the delimiters) are
// skipped.
std::vector<ExampleSolution> parse_prompt_examples(std::string_view prompt);

}  // namespace llmoea::grammar
