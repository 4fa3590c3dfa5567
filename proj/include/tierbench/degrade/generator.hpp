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

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "tierbench/tokenmodel/markov_model.hpp"
#include "tierbench/tokenmodel/token_model.hpp"
#include "tierbench/util/openai_client.hpp"

namespace tierbench::degrade {

// Greedy text generation for a rendered prompt.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  // Throws TransportError and friends; may return an empty string.
  virtual std::string generate(std::string_view prompt) const = 0;
};

class ChatGenerator final : public TextGenerator {
 public:
  ChatGenerator(std::shared_ptr<const util::ChatClient> client, std::string model,
                int max_tokens = 1024);
  std::string generate(std::string_view prompt) const override;

 private:
  std::shared_ptr<const util::ChatClient> client_;
  std::string model_;
  int max_tokens_;
};

// Offline stand-in for a chat model. Continues greedily from the end of the
// lower-cased prompt when the model has seen its final window as a context;
// otherwise starts a sentence picked by a stable hash of the prompt, so that
// different inputs still get different outputs.
class MarkovGenerator final : public TextGenerator {
 public:
  MarkovGenerator(std::shared_ptr<const tokenmodel::MarkovModel> model, std::size_t max_tokens);
  std::string generate(std::string_view prompt) const override;

 private:
  std::shared_ptr<const tokenmodel::MarkovModel> model_;
  std::size_t max_tokens_;
};

// Builds the token model used for DeQrease given the generation prompt the
// baseline answered (remote models condition on it; Markov models ignore it).
using TokenModelFactory =
    std::function<std::shared_ptr<const tokenmodel::TokenModel>(const std::string& prompt)>;

// Model id -> backend. Lookups throw ConfigError naming the missing id.
class Backends {
 public:
  void add_generator(std::string model, std::shared_ptr<const TextGenerator> generator);
  void add_token_model(std::string model, TokenModelFactory factory);

  const TextGenerator& generator(const std::string& model) const;
  std::shared_ptr<const tokenmodel::TokenModel> token_model(const std::string& model,
                                                            const std::string& prompt) const;

  bool has_generator(const std::string& model) const { return generators_.contains(model); }
  bool has_token_model(const std::string& model) const { return token_models_.contains(model); }

 private:
  std::map<std::string, std::shared_ptr<const TextGenerator>> generators_;
  std::map<std::string, TokenModelFactory> token_models_;
};

}  // namespace tierbench::degrade
