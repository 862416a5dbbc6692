#include "sackg/llm_client.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "sackg/errors.hpp"

namespace sackg {

Transcript Transcript::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open transcript: " + path.string());
  Transcript t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto rec = nlohmann::json::parse(line);
      t.entries.push_back(
          {rec.at("matcher").get<std::string>(), rec.at("response").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return t;
}

MockLlmClient::MockLlmClient(Transcript transcript)
    : transcript_(std::move(transcript)), consumed_(transcript_.entries.size(), false) {}

std::string MockLlmClient::complete(const std::string& prompt, const GenerationParams&) {
  std::lock_guard<std::mutex> lock(mutex_);
  ++calls_;
  for (std::size_t i = 0; i < transcript_.entries.size(); ++i) {
    if (consumed_[i]) continue;
    if (prompt.find(transcript_.entries[i].matcher) != std::string::npos) {
      consumed_[i] = true;
      return transcript_.entries[i].response;
    }
  }
  std::string excerpt = prompt.substr(0, 120);
  throw NoScriptError("no transcript entry matches prompt: \"" + excerpt + "\"...");
}

std::size_t MockLlmClient::calls() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return calls_;
}

RetryingLlmClient::RetryingLlmClient(std::shared_ptr<LlmClient> inner, RetryPolicy policy)
    : inner_(std::move(inner)), policy_(std::move(policy)) {
  if (!policy_.sleep) {
    policy_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

std::string RetryingLlmClient::complete(const std::string& prompt,
                                        const GenerationParams& params) {
  auto backoff = policy_.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      return inner_->complete(prompt, params);
    } catch (const TransportError&) {
      if (attempt >= policy_.max_retries) throw;
      policy_.sleep(backoff);
      backoff *= 2;
    }
  }
}

TokenBucket::TokenBucket(int per_minute, Clock clock,
                         std::function<void(std::chrono::milliseconds)> sleep)
    : per_minute_(per_minute),
      clock_(clock ? std::move(clock) : [] { return std::chrono::steady_clock::now(); }),
      sleep_(sleep ? std::move(sleep)
                   : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {}

void TokenBucket::acquire() {
  if (per_minute_ <= 0) return;
  std::unique_lock<std::mutex> lock(mutex_);
  for (;;) {
    auto now = clock_();
    auto window_start = now - std::chrono::seconds(60);
    std::erase_if(recent_, [&](const auto& t) { return t < window_start; });
    if (static_cast<int>(recent_.size()) < per_minute_) {
      recent_.push_back(now);
      return;
    }
    auto wait = recent_.front() + std::chrono::seconds(60) - now;
    auto wait_ms = std::chrono::duration_cast<std::chrono::milliseconds>(wait);
    if (wait_ms.count() < 1) wait_ms = std::chrono::milliseconds(1);
    lock.unlock();
    sleep_(wait_ms);
    lock.lock();
  }
}

RemoteLlmClient::RemoteLlmClient(RemoteConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) {
    throw ConfigError("remote LLM base URL is empty (set SACKG_LLM_URL)");
  }
  bucket_ = std::make_unique<TokenBucket>(config_.requests_per_minute);
}

RemoteLlmClient RemoteLlmClient::from_env() {
  RemoteConfig cfg;
  if (const char* url = std::getenv("SACKG_LLM_URL")) cfg.base_url = url;
  if (const char* key = std::getenv("SACKG_LLM_KEY")) cfg.api_key = key;
  return RemoteLlmClient(std::move(cfg));
}

std::string RemoteLlmClient::complete(const std::string& prompt, const GenerationParams& params) {
  bucket_->acquire();

  nlohmann::json body;
  body["model"] = params.model_id;
  body["temperature"] = params.temperature;
  body["max_tokens"] = params.max_output_tokens;
  body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt}}});

  httplib::Client client(config_.base_url);
  client.set_connection_timeout(30);
  client.set_read_timeout(120);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  auto res = client.Post("/v1/chat/completions", headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("LLM request failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransportError("LLM endpoint returned status " + std::to_string(res->status));
  }
  if (res->status < 200 || res->status >= 300) {
    throw ProviderRejectionError("LLM endpoint rejected request with status " +
                                 std::to_string(res->status) + ": " + res->body);
  }
  try {
    auto parsed = nlohmann::json::parse(res->body);
    return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderRejectionError(std::string("malformed LLM response: ") + e.what());
  }
}

}  // namespace sackg
