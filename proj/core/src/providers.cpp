#include "llmoea/providers.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "llmoea/prompt_grammar.hpp"

namespace llmoea {

namespace {

using nlohmann::json;

double clip(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

// Extrapolation weights cycled over the requested number of children.
constexpr double kMockWeights[] = {0.25, 0.5, 0.75};

void validate_mock_config(const ProviderConfig& c) {
  if (c.mock_offspring == 0) {
    throw std::invalid_argument("mock provider: offspring count must be positive");
  }
  if (c.mock_lower.empty() || c.mock_lower.size() != c.mock_upper.size()) {
    throw std::invalid_argument("mock provider: clip bounds missing or mismatched");
  }
  for (std::size_t i = 0; i < c.mock_lower.size(); ++i) {
    if (!(c.mock_lower[i] < c.mock_upper[i])) {
      throw std::invalid_argument("mock provider: lower bound must be below upper bound");
    }
  }
}

}  // namespace

UsageReport usage_report(std::span<const Exchange> exchanges) {
  UsageReport report;
  for (const Exchange& ex : exchanges) {
    report.prompt_tokens += ex.usage.prompt_tokens;
    report.completion_tokens += ex.usage.completion_tokens;
    ++report.calls;
    if (!ex.ok) ++report.failures;
  }
  report.total_tokens = report.prompt_tokens + report.completion_tokens;
  return report;
}

TokenUsage estimate_usage(const std::string& prompt, const std::string& response) {
  TokenUsage usage;
  usage.prompt_tokens = (prompt.size() + 3) / 4;
  usage.completion_tokens = (response.size() + 3) / 4;
  return usage;
}

std::string mock_complete_text(const std::string& prompt, const ProviderConfig& config) {
  if (config.mock_fault_injection) {
    return "<start>these,are,not,numbers<end> completion truncated";
  }
  const auto examples = grammar::parse_prompt_examples(prompt);
  if (examples.empty()) {
    return "<start>no,examples,found<end>";
  }
  // Rank by the sum of the listed objective values; stable keeps prompt
  // order among ties.
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto total = [](const grammar::ExampleSolution& e) {
      return std::accumulate(e.objectives.begin(), e.objectives.end(), 0.0);
    };
    return total(examples[a]) < total(examples[b]);
  });
  const std::vector<double>& best = examples[order.front()].x;
  const std::vector<double>& worst = examples[order.back()].x;

  const std::size_t dim = std::min(best.size(), config.mock_lower.size());
  std::string out;
  for (std::size_t child = 0; child < config.mock_offspring; ++child) {
    const double w = kMockWeights[child % std::size(kMockWeights)];
    std::vector<double> x(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      x[k] = clip(best[k] + w * (best[k] - worst[k]), config.mock_lower[k],
                  config.mock_upper[k]);
    }
    if (child > 0) out.push_back('\n');
    out += grammar::format_solution_line(x);
  }
  return out;
}

MockProvider::MockProvider(ProviderConfig config) : config_(std::move(config)) {
  validate_mock_config(config_);
}

Completion MockProvider::complete(const std::string& prompt) {
  Completion completion;
  completion.text = mock_complete_text(prompt, config_);
  completion.usage = estimate_usage(prompt, completion.text);
  return completion;
}

std::string build_chat_request_body(const ProviderConfig& config,
                                    const std::string& prompt) {
  json body;
  body["model"] = config.model;
  body["temperature"] = config.temperature;
  body["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});
  return body.dump();
}

HttpChatProvider::HttpChatProvider(ProviderConfig config) : config_(std::move(config)) {
  if (config_.api_base.empty()) {
    throw std::invalid_argument("http provider: api base url is required");
  }
  if (config_.model.empty()) {
    throw std::invalid_argument("http provider: model id is required");
  }
  if (config_.api_key_env.empty()) {
    throw std::invalid_argument("http provider: api key environment variable name is required");
  }
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw std::invalid_argument("http provider: environment variable " + config_.api_key_env +
                                " is not set");
  }
  if (!(config_.timeout_seconds > 0.0)) {
    throw std::invalid_argument("http provider: timeout must be positive");
  }
  api_key_ = key;
}

Completion HttpChatProvider::complete(const std::string& prompt) {
  const auto started = std::chrono::steady_clock::now();
  // api_base may carry a path prefix (e.g. .../v1); split origin and path.
  std::string base = config_.api_base;
  while (!base.empty() && base.back() == '/') base.pop_back();
  const std::size_t scheme = base.find("://");
  const std::size_t path_start =
      scheme == std::string::npos ? base.find('/') : base.find('/', scheme + 3);
  std::string origin = path_start == std::string::npos ? base : base.substr(0, path_start);
  std::string path_prefix = path_start == std::string::npos ? "" : base.substr(path_start);

  httplib::Client client(origin);
  const auto seconds = static_cast<time_t>(config_.timeout_seconds);
  const auto micros = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);
  client.set_bearer_token_auth(api_key_);

  const std::string body = build_chat_request_body(config_, prompt);
  httplib::Result result =
      client.Post(path_prefix + "/chat/completions", body, "application/json");
  if (!result) {
    std::ostringstream msg;
    msg << "http provider: transport failure (" << httplib::to_string(result.error()) << ")";
    throw TransportError(msg.str());
  }
  if (result->status < 200 || result->status >= 300) {
    std::ostringstream msg;
    msg << "http provider: status " << result->status << ": "
        << result->body.substr(0, 200);
    throw TransportError(msg.str());
  }

  json parsed = json::parse(result->body, nullptr, false);
  if (parsed.is_discarded()) {
    throw TransportError("http provider: response body is not valid JSON");
  }
  Completion completion;
  try {
    completion.text = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    completion.usage.prompt_tokens = parsed.at("usage").at("prompt_tokens").get<std::size_t>();
    completion.usage.completion_tokens =
        parsed.at("usage").at("completion_tokens").get<std::size_t>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("http provider: malformed response: ") + e.what());
  }
  completion.latency_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  return completion;
}

std::unique_ptr<Provider> make_provider(const ProviderConfig& config) {
  switch (config.kind) {
    case ProviderKind::mock:
      return std::make_unique<MockProvider>(config);
    case ProviderKind::http_chat:
      return std::make_unique<HttpChatProvider>(config);
  }
  throw std::invalid_argument("make_provider: unknown provider kind");
}

}  // namespace llmoea
