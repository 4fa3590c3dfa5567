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

#include "tierbench/util/openai_client.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "tierbench/util/error.hpp"

namespace tierbench::util {
namespace {

// Splits "http://host:port/v1" into ("http://host:port", "/v1").
std::pair<std::string, std::string> split_base_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint URL must include a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<1024>& sem) : sem_(sem) { sem_.acquire(); }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

}  // namespace

OpenAiClient::OpenAiClient(EndpointConfig endpoint, RetryPolicy retry)
    : endpoint_(std::move(endpoint)), retry_(retry) {
  std::tie(scheme_host_port_, path_prefix_) = split_base_url(endpoint_.base_url);
  const auto slots = static_cast<std::ptrdiff_t>(
      std::clamp<std::size_t>(endpoint_.max_in_flight, 1, 1024));
  slots_ = std::make_unique<std::counting_semaphore<1024>>(slots);
  if (retry_.max_attempts < 1) retry_.max_attempts = 1;
}

OpenAiClient::~OpenAiClient() = default;

nlohmann::json OpenAiClient::post_once(std::string_view path, const std::string& payload,
                                       bool& retryable) const {
  retryable = false;
  httplib::Client client(scheme_host_port_);
  const auto timeout_s = std::chrono::duration_cast<std::chrono::seconds>(endpoint_.timeout);
  client.set_connection_timeout(timeout_s);
  client.set_read_timeout(timeout_s);
  client.set_write_timeout(timeout_s);

  httplib::Headers headers;
  if (!endpoint_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + endpoint_.api_key);
  }
  const std::string full_path = path_prefix_ + std::string(path);
  auto result = client.Post(full_path, headers, payload, "application/json");
  if (!result) {
    retryable = true;
    throw TransportError("request to " + scheme_host_port_ + full_path +
                         " failed: " + httplib::to_string(result.error()));
  }
  if (result->status == 429 || result->status >= 500) {
    retryable = true;
    throw TransportError("HTTP " + std::to_string(result->status) + " from " + full_path);
  }
  if (result->status < 200 || result->status >= 300) {
    throw TransportError("HTTP " + std::to_string(result->status) + " from " + full_path +
                         ": " + result->body.substr(0, 200));
  }
  try {
    return nlohmann::json::parse(result->body);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON response from " + full_path + ": " + e.what());
  }
}

nlohmann::json OpenAiClient::post(std::string_view path, const nlohmann::json& body) const {
  SlotGuard slot(*slots_);
  const std::string payload = body.dump();
  auto backoff = retry_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    bool retryable = false;
    try {
      return post_once(path, payload, retryable);
    } catch (const TransportError&) {
      if (!retryable || attempt >= retry_.max_attempts) throw;
    }
    std::this_thread::sleep_for(backoff);
    backoff = std::min(retry_.max_backoff,
                       std::chrono::milliseconds(static_cast<long long>(
                           static_cast<double>(backoff.count()) * retry_.multiplier)));
  }
}

std::string OpenAiClient::chat(std::string_view model, std::string_view prompt,
                               int max_tokens) const {
  const nlohmann::json body = {
      {"model", model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
      {"temperature", 0},
      {"max_tokens", max_tokens},
  };
  return parse_chat_content(post("/chat/completions", body));
}

std::vector<TokenLogprob> OpenAiClient::next_token_logprobs(std::string_view model,
                                                            std::string_view prompt,
                                                            int top) const {
  const nlohmann::json body = {
      {"model", model}, {"prompt", prompt}, {"max_tokens", 1},
      {"temperature", 0}, {"logprobs", top},
  };
  return parse_top_logprobs(post("/completions", body));
}

std::vector<TokenLogprob> parse_top_logprobs(const nlohmann::json& response) {
  const auto choices = response.find("choices");
  if (choices == response.end() || !choices->is_array() || choices->empty()) {
    throw CapabilityError("response has no choices");
  }
  const auto& choice = (*choices)[0];
  const auto lp = choice.find("logprobs");
  if (lp == choice.end() || lp->is_null()) {
    throw CapabilityError("response lacks per-token log-probabilities");
  }

  std::vector<TokenLogprob> out;
  if (auto legacy = lp->find("top_logprobs"); legacy != lp->end() && legacy->is_array()) {
    if (legacy->empty() || !(*legacy)[0].is_object()) {
      throw CapabilityError("response lacks top log-probabilities");
    }
    for (const auto& [token, value] : (*legacy)[0].items()) {
      out.push_back({token, value.get<double>()});
    }
  } else if (auto content = lp->find("content"); content != lp->end() && content->is_array()) {
    if (content->empty()) throw CapabilityError("response lacks top log-probabilities");
    const auto& first = (*content)[0];
    const auto top = first.find("top_logprobs");
    if (top == first.end() || !top->is_array()) {
      throw CapabilityError("response lacks top log-probabilities");
    }
    for (const auto& entry : *top) {
      out.push_back({entry.at("token").get<std::string>(), entry.at("logprob").get<double>()});
    }
  } else {
    throw CapabilityError("response lacks top log-probabilities");
  }
  if (out.empty()) throw CapabilityError("response returned no candidate tokens");
  return out;
}

std::string parse_chat_content(const nlohmann::json& response) {
  try {
    const auto& message = response.at("choices").at(0).at("message");
    const auto& content = message.at("content");
    if (content.is_null()) return {};
    return content.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("chat response has no message content: ") + e.what());
  }
}

std::string resolve_api_key(std::string_view configured) {
  if (const char* env = std::getenv(kApiKeyEnv); env != nullptr && *env != '\0') {
    return env;
  }
  return std::string(configured);
}

}  // namespace tierbench::util
