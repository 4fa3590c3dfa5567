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

#include "tierbench/tokenmodel/remote_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "tierbench/util/error.hpp"

namespace tierbench::tokenmodel {

RemoteTokenModel::RemoteTokenModel(std::shared_ptr<const util::CompletionClient> client,
                                   RemoteModelOptions options)
    : client_(std::move(client)), options_(std::move(options)) {
  if (!client_) throw ConfigError("remote token model needs a client");
  if (options_.model.empty()) throw ConfigError("remote token model needs a model id");
  if (options_.max_top_logprobs < 1) throw ConfigError("max_top_logprobs must be >= 1");
}

std::string RemoteTokenModel::build_prompt(std::span<const std::string> context) const {
  std::string body = detokenize(context);
  if (options_.max_context_chars > 0 && body.size() > options_.max_context_chars) {
    body = body.substr(body.size() - options_.max_context_chars);
  }
  return options_.prompt_prefix + body;
}

TokenDistribution RemoteTokenModel::next_distribution(std::span<const std::string> context,
                                                      std::size_t top) const {
  if (top == 0) throw InvalidArgument("top must be >= 1");
  const int request_top =
      static_cast<int>(std::min<std::size_t>(top, static_cast<std::size_t>(options_.max_top_logprobs)));
  const auto candidates = client_->next_token_logprobs(options_.model, build_prompt(context),
                                                       request_top);
  std::vector<TokenProb> weights;
  for (const auto& c : candidates) {
    // Servers occasionally repeat a token string with different ids; keep the best.
    auto it = std::find_if(weights.begin(), weights.end(),
                           [&](const TokenProb& w) { return w.token == c.token; });
    const double p = std::exp(c.logprob);
    if (it == weights.end()) {
      if (p > 0.0) weights.push_back({c.token, p});
    } else {
      it->probability = std::max(it->probability, p);
    }
  }
  if (weights.empty()) throw CapabilityError("no usable candidate tokens in response");
  return TokenDistribution::from_weights(std::move(weights)).top(top);
}

double RemoteTokenModel::conditional_log_prob(std::span<const std::string> context,
                                              std::string_view token) const {
  const auto candidates = client_->next_token_logprobs(
      options_.model, build_prompt(context), options_.max_top_logprobs);
  for (const auto& c : candidates) {
    if (c.token == token) return std::max(c.logprob, kLogProbabilityFloor);
  }
  return kLogProbabilityFloor;
}

std::vector<std::string> RemoteTokenModel::tokenize(std::string_view text) const {
  // Each piece is leading whitespace plus one non-space run; trailing
  // whitespace attaches to the last piece.
  std::vector<std::string> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size() && !pieces.empty() &&
        text.substr(start).find_first_not_of(" \t\r\n") == std::string_view::npos) {
      pieces.back() += std::string(text.substr(start));
    } else {
      pieces.emplace_back(text.substr(start, i - start));
    }
  }
  return pieces;
}

std::string RemoteTokenModel::detokenize(std::span<const std::string> tokens) const {
  std::string out;
  for (const auto& t : tokens) out += t;
  return out;
}

}  // namespace tierbench::tokenmodel
