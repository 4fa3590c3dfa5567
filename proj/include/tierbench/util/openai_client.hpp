// Copyright 2026 The tierbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tierbench::util {

// Environment variable that overrides any configured API key.
inline constexpr const char* kApiKeyEnv = "REFINE_API_KEY";

struct EndpointConfig {
  // Base URL including the API prefix, e.g. "http://localhost:8000/v1".
  std::string base_url;
  std::string api_key;
  std::chrono::milliseconds timeout{60000};
  std::size_t max_in_flight = 4;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{4000};
};

// Single-turn chat completion with greedy decoding.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string chat(std::string_view model, std::string_view prompt,
                           int max_tokens) const = 0;
};

struct TokenLogprob {
  std::string token;
  double logprob = 0.0;
};

// Next-token candidates for exactly one generated position.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual std::vector<TokenLogprob> next_token_logprobs(std::string_view model,
                                                        std::string_view prompt,
                                                        int top) const = 0;
};

// Client for OpenAI-compatible servers (/chat/completions and /completions).
// Thread-safe; concurrent requests are capped at endpoint.max_in_flight.
// Connection failures, HTTP 429 and 5xx are retried with exponential backoff.
class OpenAiClient final : public ChatClient, public CompletionClient {
 public:
  explicit OpenAiClient(EndpointConfig endpoint, RetryPolicy retry = {});
  ~OpenAiClient() override;

  std::string chat(std::string_view model, std::string_view prompt,
                   int max_tokens) const override;

  std::vector<TokenLogprob> next_token_logprobs(std::string_view model,
                                                std::string_view prompt,
                                                int top) const override;

  // POSTs `body` to base_url + path and returns the parsed JSON response.
  nlohmann::json post(std::string_view path, const nlohmann::json& body) const;

  const EndpointConfig& endpoint() const { return endpoint_; }

 private:
  nlohmann::json post_once(std::string_view path, const std::string& payload,
                           bool& retryable) const;

  EndpointConfig endpoint_;
  RetryPolicy retry_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::unique_ptr<std::counting_semaphore<1024>> slots_;
};

// Extracts the first position's top candidates from either the legacy
// completions shape (logprobs.top_logprobs[0] as a token->logprob object) or
// the chat shape (logprobs.content[0].top_logprobs as a list). Throws
// CapabilityError when neither is present.
std::vector<TokenLogprob> parse_top_logprobs(const nlohmann::json& response);

// choices[0].message.content; throws ParseError when absent.
std::string parse_chat_content(const nlohmann::json& response);

// REFINE_API_KEY when set and non-empty, otherwise `configured`.
std::string resolve_api_key(std::string_view configured);

}  // namespace tierbench::util
