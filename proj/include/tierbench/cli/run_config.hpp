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


// Declarative run configuration (a single JSON document) and the backends
// it describes.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tierbench/core/types.hpp"
#include "tierbench/degrade/generator.hpp"
#include "tierbench/degrade/hierarchy_builder.hpp"
#include "tierbench/judge/judge.hpp"
#include "tierbench/tokenmodel/markov_model.hpp"
#include "tierbench/util/openai_client.hpp"

namespace tierbench::cli {

struct EndpointSpec {
  util::EndpointConfig endpoint;
  util::RetryPolicy retry;
};

enum class ModelBackend { kMarkov, kRemote };

struct ModelSpec {
  ModelBackend backend = ModelBackend::kMarkov;
  std::size_t max_tokens = 48;

  // markov
  std::string corpus;  // "builtin:<name>" or a path
  int order = 2;
  tokenmodel::Tokenizer tokenizer = tokenmodel::Tokenizer::kWhitespace;
  std::string end_token = "</s>";

  // remote
  std::string endpoint;
  std::string model;
  int max_top_logprobs = 20;
  std::size_t max_context_chars = 0;
};

struct RunConfig {
  core::TaskKind task = core::TaskKind::kCodeSummarization;
  std::string inputs;          // JSON-lines task inputs
  std::size_t max_inputs = 0;  // 0 = all
  degrade::GenerationTask generation;
  std::map<std::string, EndpointSpec> endpoints;
  std::map<std::string, ModelSpec> models;
  degrade::TierPlan plan;

  judge::JudgeConfig forward;
  judge::JudgeConfig backward;
  std::vector<judge::JudgeConfig> candidates;
  // Default level qualities for oracle and reversed judges that give none.
  std::vector<double> synthetic_qualities;

  std::uint64_t seed = 0;
  std::size_t concurrency = 1;
  std::size_t top_m = 3;
  int phase = 1;
  std::string output_dir;
  // Cycle state of the previous phase; its survivors narrow `candidates`.
  std::string survivors;

  // Relative paths in the document resolve against `base_dir`. An oracle
  // judge without an explicit seed gets one derived from the run seed and its
  // id; `seed_override` replaces the document's seed before that happens.
  static RunConfig from_json(const nlohmann::json& j, const std::string& base_dir,
                             std::optional<std::uint64_t> seed_override = std::nullopt);
  static RunConfig load(const std::string& path,
                        std::optional<std::uint64_t> seed_override = std::nullopt);

  // Throws ConfigError naming the first problem, including models, endpoints
  // and template files that are referenced but not defined.
  void validate() const;
};

// Concrete clients and generators for a configuration.
class BackendSet {
 public:
  explicit BackendSet(const RunConfig& config);

  const degrade::Backends& generation() const { return generation_; }
  // Client for a remote judge's endpoint; nullptr for synthetic judges.
  std::shared_ptr<const util::ChatClient> client_for(const judge::JudgeConfig& judge) const;

 private:
  degrade::Backends generation_;
  std::map<std::string, std::shared_ptr<util::OpenAiClient>> clients_;
};

}  // namespace tierbench::cli
