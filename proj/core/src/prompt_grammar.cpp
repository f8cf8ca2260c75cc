#include "llmoea/prompt_grammar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace llmoea::grammar {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                        s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                        s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string format_components(std::span<const double> values) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out.push_back(',');
    std::snprintf(buf, sizeof(buf), "%.3f", values[i]);
    out += buf;
  }
  return out;
}

std::string format_solution_line(std::span<const double> x) {
  std::string out(kStartToken);
  out += format_components(x);
  out += kEndToken;
  return out;
}

std::vector<Span> extract_spans(std::string_view text) {
  std::vector<Span> spans;
  std::size_t pos = 0;
  while (true) {
    const std::size_t start = text.find(kStartToken, pos);
    if (start == std::string_view::npos) break;
    const std::size_t body_begin = start + kStartToken.size();
    const std::size_t end = text.find(kEndToken, body_begin);
    if (end == std::string_view::npos) break;
    spans.push_back({std::string(text.substr(body_begin, end - body_begin)), start});
    pos = end + kEndToken.size();
  }
  return spans;
}

std::optional<std::vector<double>> parse_components(std::string_view body,
                                                    std::string* error) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = body.find(',', pos);
    std::string_view token = trim(body.substr(pos, comma == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : comma - pos));
    if (token.empty()) {
      if (error) *error = "empty component";
      return std::nullopt;
    }
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      if (error) *error = "component '" + std::string(token) + "' is not a finite number";
      return std::nullopt;
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return values;
}

std::vector<ExampleSolution> parse_prompt_examples(std::string_view prompt) {
  std::vector<ExampleSolution> examples;
  const std::vector<Span> spans = extract_spans(prompt);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    auto x = parse_components(spans[i].body, nullptr);
    if (!x) continue;
    // The obj_value line sits between this span and the next one.
    const std::size_t from = spans[i].begin + kStartToken.size() + spans[i].body.size();
    const std::size_t until =
        (i + 1 < spans.size()) ? spans[i + 1].begin : prompt.size();
    std::string_view tail = prompt.substr(from, until - from);
    const std::size_t label = tail.find(kObjectiveLabel);
    if (label == std::string_view::npos) continue;
    std::string_view rest = tail.substr(label + kObjectiveLabel.size());
    const std::size_t eol = rest.find('\n');
    if (eol != std::string_view::npos) rest = rest.substr(0, eol);
    auto objectives = parse_components(rest, nullptr);
    if (!objectives) continue;
    examples.push_back({std::move(*x), std::move(*objectives)});
  }
  return examples;
}

}  // namespace llmoea::grammar
