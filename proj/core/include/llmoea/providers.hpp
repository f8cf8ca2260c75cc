#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace llmoea {

enum class ProviderKind { mock, http_chat };

// All knobs a provider can need. The API key for http_chat is read from the
// environment variable named here, never from flags or files.
struct ProviderConfig {
  ProviderKind kind = ProviderKind::mock;

  // http_chat
  std::string api_base;                       // e.g. https://api.example.com/v1
  std::string model;
  std::string api_key_env = "LLMOEA_API_KEY";
  double timeout_seconds = 60.0;
  double temperature = 1.0;

  // mock
  std::size_t mock_offspring = 3;             // solutions per reply
  std::vector<double> mock_lower;             // clip box for generated values
  std::vector<double> mock_upper;
  bool mock_fault_injection = false;          // reply with malformed text
};

struct TokenUsage {
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  std::size_t total() const { return prompt_tokens + completion_tokens; }
};

struct Completion {
  std::string text;
  TokenUsage usage;
  double latency_ms = 0.0;  // measured by the provider; 0 for the mock
};

// One prompt/response pair as seen by the operator, including failures.
struct Exchange {
  std::string prompt;
  std::string response;      // empty when transport failed
  TokenUsage usage;
  double latency_ms = 0.0;
  int attempt = 0;           // 1-based attempt number within a generation
  bool ok = false;           // transport succeeded and response parsed
};

struct UsageReport {
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  std::size_t total_tokens = 0;
  std::size_t calls = 0;
  std::size_t failures = 0;
};

UsageReport usage_report(std::span<const Exchange> exchanges);

// Network / transport level failure: timeouts, non-2xx statuses, missing
// response fields. Parse problems of well-transported text are not transport
// errors; the operator handles those.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Provider {
 public:
  virtual ~Provider() = default;
  // Single self-contained request: no conversation state is kept between
  // calls. Throws TransportError.
  virtual Completion complete(const std::string& prompt) = 0;
  virtual std::string name() const = 0;
};

// Offline surrogate: reads the example solutions out of the prompt, ranks
// them by the sum of their listed objective values, and extrapolates from
// the best past the worst. Deterministic function of (prompt, config).
class MockProvider : public Provider {
 public:
  explicit MockProvider(ProviderConfig config);
  Completion complete(const std::string& prompt) override;
  std::string name() const override { return "mock"; }

 private:
  ProviderConfig config_;
};

// OpenAI-style chat completion endpoint: POST {api_base}/chat/completions
// with a single user message. Requires the key environment variable to be
// set and reports token usage from the response body.
class HttpChatProvider : public Provider {
 public:
  explicit HttpChatProvider(ProviderConfig config);
  Completion complete(const std::string& prompt) override;
  std::string name() const override { return "http:" + config_.model; }

 private:
  ProviderConfig config_;
  std::string api_key_;
};

// Request body sent by HttpChatProvider, exposed for tests.
std::string build_chat_request_body(const ProviderConfig& config,
                                    const std::string& prompt);

// Deterministic mock reply for a built prompt; fault = true yields text that
// can never parse. Exposed for tests.
std::string mock_complete_text(const std::string& prompt, const ProviderConfig& config);

// ceil(len/4) per side; the mock has no tokenizer.
TokenUsage estimate_usage(const std::string& prompt, const std::string& response);

// Validates the config eagerly and constructs the provider. Throws
// std::invalid_argument on missing model/base/key or bad mock bounds.
std::unique_ptr<Provider> make_provider(const ProviderConfig& config);

}  // namespace llmoea
