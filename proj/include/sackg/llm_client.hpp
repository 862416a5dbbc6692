#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace sackg {

struct GenerationParams {
  double temperature = 0.1;
  int max_output_tokens = 500;
  std::string model_id = "gpt-3.5-turbo";
};

// Provider-agnostic completion interface. Implementations must be safe to
// call from multiple threads.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const std::string& prompt, const GenerationParams& params) = 0;
};

// A scripted conversation: each entry pairs a substring matcher with the
// response to return. Entries sharing a matcher are consumed in order.
struct TranscriptEntry {
  std::string matcher;
  std::string response;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;

  // Line-delimited JSON records {"matcher": ..., "response": ...}.
  static Transcript load(const std::filesystem::path& path);
};

// Deterministic offline client: complete() returns the response of the
// first unconsumed entry whose matcher is a substring of the prompt, and
// throws NoScriptError when nothing matches.
class MockLlmClient : public LlmClient {
 public:
  explicit MockLlmClient(Transcript transcript);

  std::string complete(const std::string& prompt, const GenerationParams& params) override;

  std::size_t calls() const;

 private:
  Transcript transcript_;
  std::vector<bool> consumed_;
  std::size_t calls_ = 0;
  mutable std::mutex mutex_;
};

struct RetryPolicy {
  int max_retries = 3;  // so at most 1 + max_retries attempts
  std::chrono::milliseconds initial_backoff{1000};
  std::function<void(std::chrono::milliseconds)> sleep;  // overridable for tests
};

// Wraps a client with bounded retries on TransportError; backoff doubles
// after each failed attempt. ProviderRejectionError passes through.
class RetryingLlmClient : public LlmClient {
 public:
  RetryingLlmClient(std::shared_ptr<LlmClient> inner, RetryPolicy policy = {});

  std::string complete(const std::string& prompt, const GenerationParams& params) override;

 private:
  std::shared_ptr<LlmClient> inner_;
  RetryPolicy policy_;
};

// Client-side rate limit: at most `per_minute` acquisitions per sliding
// 60-second window; acquire() blocks until a slot frees up. per_minute == 0
// disables limiting.
class TokenBucket {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit TokenBucket(int per_minute, Clock clock = nullptr,
                       std::function<void(std::chrono::milliseconds)> sleep = nullptr);

  void acquire();

 private:
  int per_minute_;
  Clock clock_;
  std::function<void(std::chrono::milliseconds)> sleep_;
  std::vector<std::chrono::steady_clock::time_point> recent_;
  std::mutex mutex_;
};

struct RemoteConfig {
  std::string base_url;  // e.g. http://host:port — /v1/chat/completions is appended
  std::string api_key;
  int requests_per_minute = 0;
};

// Chat-completion style HTTP client. Reads SACKG_LLM_URL / SACKG_LLM_KEY
// when constructed via from_env(). 5xx, 429 and connection failures raise
// TransportError (retryable); other non-2xx codes raise
// ProviderRejectionError.
class RemoteLlmClient : public LlmClient {
 public:
  explicit RemoteLlmClient(RemoteConfig config);
  static RemoteLlmClient from_env();

  std::string complete(const std::string& prompt, const GenerationParams& params) override;

 private:
  RemoteConfig config_;
  std::unique_ptr<TokenBucket> bucket_;
};

}  // namespace sackg
