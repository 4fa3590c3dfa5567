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

#include <memory>
#include <string>

#include "tierbench/tokenmodel/token_model.hpp"
#include "tierbench/util/openai_client.hpp"

namespace tierbench::tokenmodel {

struct RemoteModelOptions {
  std::string model;
  // Text placed before the decoded context in every request (e.g. the
  // generation prompt the baseline answered).
  std::string prompt_prefix;
  // Upper bound on candidates requested per step; servers often cap this.
  int max_top_logprobs = 20;
  // Keep only the trailing N characters of the decoded context; 0 = no limit.
  std::size_t max_context_chars = 0;
  std::string end_token = "<|endoftext|>";
};

// Next-token distributions from an OpenAI-compatible completion endpoint, one
// generated position per request. Tokens are whitespace-prefixed word pieces
// so that concatenation reproduces the text; the server applies its own
// tokenizer to the prompt.
class RemoteTokenModel final : public TokenModel {
 public:
  RemoteTokenModel(std::shared_ptr<const util::CompletionClient> client,
                   RemoteModelOptions options);

  BackendKind kind() const override { return BackendKind::kRemote; }

  // Throws TransportError or CapabilityError.
  TokenDistribution next_distribution(std::span<const std::string> context,
                                      std::size_t top) const override;
  double conditional_log_prob(std::span<const std::string> context,
                              std::string_view token) const override;

  std::vector<std::string> tokenize(std::string_view text) const override;
  std::string detokenize(std::span<const std::string> tokens) const override;

  std::string_view end_token() const override { return options_.end_token; }
  const std::vector<std::string>& vocabulary() const override { return empty_vocabulary_; }

 private:
  std::string build_prompt(std::span<const std::string> context) const;

  std::shared_ptr<const util::CompletionClient> client_;
  RemoteModelOptions options_;
  std::vector<std::string> empty_vocabulary_;
};

}  // namespace tierbench::tokenmodel
