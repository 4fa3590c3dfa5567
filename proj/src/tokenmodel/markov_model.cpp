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

#include "tierbench/tokenmodel/markov_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tierbench/util/error.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::tokenmodel {

Tokenizer parse_tokenizer(std::string_view text) {
  if (text == "whitespace") return Tokenizer::kWhitespace;
  if (text == "character") return Tokenizer::kCharacter;
  throw ConfigError("unknown tokenizer: '" + std::string(text) + "'");
}

MarkovModel train_markov(std::string_view corpus, int order, Tokenizer tokenizer,
                         std::string end_token) {
  if (order < 1) throw InvalidArgument("markov order must be >= 1");
  MarkovModel model;
  model.order_ = order;
  model.tokenizer_ = tokenizer;
  model.end_token_ = std::move(end_token);

  const auto tokens = model.tokenize(corpus);
  if (tokens.size() < static_cast<std::size_t>(order) + 1) {
    throw InvalidArgument("corpus too short: " + std::to_string(tokens.size()) +
                          " tokens for order " + std::to_string(order));
  }

  std::set<std::string> vocab(tokens.begin(), tokens.end());
  model.vocabulary_.assign(vocab.begin(), vocab.end());

  const auto n = static_cast<std::size_t>(order);
  for (std::size_t i = n; i < tokens.size(); ++i) {
    MarkovModel::Context ctx(tokens.begin() + static_cast<std::ptrdiff_t>(i - n),
                             tokens.begin() + static_cast<std::ptrdiff_t>(i));
    ++model.counts_[ctx][tokens[i]];
    ++model.totals_[ctx];
  }
  return model;
}

const MarkovModel::Counts* MarkovModel::find_counts(std::span<const std::string> context) const {
  const auto n = static_cast<std::size_t>(order_);
  if (context.size() < n) return nullptr;
  const Context key(context.end() - static_cast<std::ptrdiff_t>(n), context.end());
  auto it = counts_.find(key);
  return it == counts_.end() ? nullptr : &it->second;
}

bool MarkovModel::has_context(std::span<const std::string> context) const {
  return find_counts(context) != nullptr;
}

TokenDistribution MarkovModel::uniform(std::size_t top) const {
  std::vector<TokenProb> entries;
  entries.reserve(vocabulary_.size());
  for (const auto& tok : vocabulary_) entries.push_back({tok, 1.0});
  return TokenDistribution::from_weights(std::move(entries)).top(top);
}

TokenDistribution MarkovModel::next_distribution(std::span<const std::string> context,
                                                 std::size_t top) const {
  if (top == 0) throw InvalidArgument("top must be >= 1");
  const Counts* counts = find_counts(context);
  if (counts == nullptr) return uniform(top);
  std::vector<TokenProb> entries;
  entries.reserve(counts->size());
  for (const auto& [tok, c] : *counts) entries.push_back({tok, static_cast<double>(c)});
  return TokenDistribution::from_weights(std::move(entries)).top(top);
}

double MarkovModel::conditional_log_prob(std::span<const std::string> context,
                                         std::string_view token) const {
  double p = 0.0;
  if (const Counts* counts = find_counts(context)) {
    auto it = counts->find(std::string(token));
    if (it != counts->end()) {
      const Context key(context.end() - order_, context.end());
      p = static_cast<double>(it->second) / static_cast<double>(totals_.at(key));
    }
  } else if (std::binary_search(vocabulary_.begin(), vocabulary_.end(), token)) {
    p = 1.0 / static_cast<double>(vocabulary_.size());
  }
  return p > kProbabilityFloor ? std::log(p) : kLogProbabilityFloor;
}

std::vector<std::string> MarkovModel::tokenize(std::string_view text) const {
  if (tokenizer_ == Tokenizer::kWhitespace) return util::split_whitespace(text);
  std::vector<std::string> out;
  out.reserve(text.size());
  for (char c : text) out.emplace_back(1, c);
  return out;
}

std::string MarkovModel::detokenize(std::span<const std::string> tokens) const {
  std::string out;
  const bool spaced = tokenizer_ == Tokenizer::kWhitespace;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (spaced && i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::vector<std::string>> MarkovModel::contexts() const {
  std::vector<Context> out;
  out.reserve(counts_.size());
  for (const auto& [ctx, _] : counts_) out.push_back(ctx);
  return out;
}

std::vector<std::string> MarkovModel::greedy(std::span<const std::string> context,
                                             std::size_t max_tokens) const {
  std::vector<std::string> history(context.begin(), context.end());
  std::vector<std::string> generated;
  for (std::size_t step = 0; step < max_tokens; ++step) {
    const auto next = next_distribution(history, 1)[0].token;
    if (next == end_token_) break;
    history.push_back(next);
    generated.push_back(next);
  }
  return generated;
}

}  // namespace tierbench::tokenmodel
