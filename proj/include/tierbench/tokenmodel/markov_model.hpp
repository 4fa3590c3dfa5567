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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tierbench/tokenmodel/token_model.hpp"

namespace tierbench::tokenmodel {

enum class Tokenizer { kWhitespace, kCharacter };

Tokenizer parse_tokenizer(std::string_view text);

// Maximum-likelihood n-gram model over a single token stream. The corpus is
// not padded: no start or end markers are inserted. Contexts shorter than
// `order`, and contexts never seen in training, fall back to the uniform
// distribution over the vocabulary. An end-of-sequence marker exists only if
// the corpus spells it out (the literal token "</s>" by default).
class MarkovModel final : public TokenModel {
 public:
  BackendKind kind() const override { return BackendKind::kMarkov; }

  TokenDistribution next_distribution(std::span<const std::string> context,
                                      std::size_t top) const override;
  double conditional_log_prob(std::span<const std::string> context,
                              std::string_view token) const override;

  std::vector<std::string> tokenize(std::string_view text) const override;
  std::string detokenize(std::span<const std::string> tokens) const override;

  std::string_view end_token() const override { return end_token_; }
  const std::vector<std::string>& vocabulary() const override { return vocabulary_; }

  int order() const { return order_; }
  Tokenizer tokenizer() const { return tokenizer_; }

  // True when the trailing `order` tokens of `context` were observed.
  bool has_context(std::span<const std::string> context) const;

  // Every observed context, in lexicographic order.
  std::vector<std::vector<std::string>> contexts() const;

  // Deterministic argmax decoding from `context` until the end token or
  // `max_tokens` new tokens. The end token is not included in the result.
  std::vector<std::string> greedy(std::span<const std::string> context,
                                  std::size_t max_tokens) const;

 private:
  friend MarkovModel train_markov(std::string_view corpus, int order, Tokenizer tokenizer,
                                  std::string end_token);

  using Context = std::vector<std::string>;
  using Counts = std::map<std::string, std::uint64_t>;

  const Counts* find_counts(std::span<const std::string> context) const;
  TokenDistribution uniform(std::size_t top) const;

  int order_ = 1;
  Tokenizer tokenizer_ = Tokenizer::kWhitespace;
  std::string end_token_ = "</s>";
  std::vector<std::string> vocabulary_;  // sorted
  std::map<Context, Counts> counts_;
  std::map<Context, std::uint64_t> totals_;
};

// Counts every order-gram of the corpus. Throws InvalidArgument when the
// corpus yields fewer than order + 1 tokens or order < 1.
MarkovModel train_markov(std::string_view corpus, int order, Tokenizer tokenizer,
                         std::string end_token = "</s>");

}  // namespace tierbench::tokenmodel
