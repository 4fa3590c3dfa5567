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

#include "tierbench/degrade/generator.hpp"

#include "tierbench/util/error.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::degrade {

ChatGenerator::ChatGenerator(std::shared_ptr<const util::ChatClient> client, std::string model,
                             int max_tokens)
    : client_(std::move(client)), model_(std::move(model)), max_tokens_(max_tokens) {
  if (!client_) throw ConfigError("chat generator needs a client");
  if (model_.empty()) throw ConfigError("chat generator needs a model id");
}

std::string ChatGenerator::generate(std::string_view prompt) const {
  return client_->chat(model_, prompt, max_tokens_);
}

MarkovGenerator::MarkovGenerator(std::shared_ptr<const tokenmodel::MarkovModel> model,
                                 std::size_t max_tokens)
    : model_(std::move(model)), max_tokens_(max_tokens) {
  if (!model_) throw ConfigError("markov generator needs a model");
  if (max_tokens_ == 0) throw ConfigError("markov generator max_tokens must be >= 1");
}

std::string MarkovGenerator::generate(std::string_view prompt) const {
  const auto tokens = model_->tokenize(util::to_lower(prompt));
  if (model_->has_context(tokens)) return model_->detokenize(model_->greedy(tokens, max_tokens_));

  // Unknown ending: start a fresh sentence chosen by the prompt's hash.
  auto starts = model_->contexts();
  std::vector<std::vector<std::string>> sentence_starts;
  for (auto& ctx : starts) {
    if (!ctx.empty() && ctx.front() == model_->end_token()) sentence_starts.push_back(ctx);
  }
  if (!sentence_starts.empty()) starts = std::move(sentence_starts);
  const auto& start = starts[util::stable_hash(prompt) % starts.size()];

  std::vector<std::string> out;
  for (const auto& t : start) {
    if (t != model_->end_token()) out.push_back(t);
  }
  const std::size_t budget = max_tokens_ > out.size() ? max_tokens_ - out.size() : 0;
  for (auto& t : model_->greedy(start, budget)) out.push_back(std::move(t));
  return model_->detokenize(out);
}

void Backends::add_generator(std::string model, std::shared_ptr<const TextGenerator> generator) {
  if (!generator) throw ConfigError("generator for '" + model + "' is null");
  generators_[std::move(model)] = std::move(generator);
}

void Backends::add_token_model(std::string model, TokenModelFactory factory) {
  if (!factory) throw ConfigError("token model factory for '" + model + "' is empty");
  token_models_[std::move(model)] = std::move(factory);
}

const TextGenerator& Backends::generator(const std::string& model) const {
  auto it = generators_.find(model);
  if (it == generators_.end()) throw ConfigError("no generator backend for model '" + model + "'");
  return *it->second;
}

std::shared_ptr<const tokenmodel::TokenModel> Backends::token_model(
    const std::string& model, const std::string& prompt) const {
  auto it = token_models_.find(model);
  if (it == token_models_.end()) {
    throw ConfigError("no token model backend for model '" + model + "'");
  }
  return it->second(prompt);
}

}  // namespace tierbench::degrade
