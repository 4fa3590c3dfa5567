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

// Builds k-tier hierarchy samples: a greedy baseline as tier 1 and
// progressively degraded variants below it.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tierbench/core/types.hpp"
#include "tierbench/degrade/generator.hpp"
#include "tierbench/deqrease/deqrease.hpp"
#include "tierbench/util/error.hpp"

namespace tierbench::degrade {

struct GenerationTask {
  core::TaskKind kind = core::TaskKind::kCodeSummarization;
  std::string prompt_template;  // {input}, optional {aux}
  std::string baseline_model;

  // Throws ConfigError when the template lacks {input} or no model is named.
  void validate() const;
};

enum class Strategy { kReducedCapacity, kDeqrease, kInjection };

std::string_view to_string(Strategy strategy);
Strategy parse_strategy(std::string_view text);

enum class InjectionEngine { kRules, kLlm };

struct TierPlan {
  Strategy strategy = Strategy::kDeqrease;
  int k = 3;

  // reduced-capacity: k model ids, strongest first.
  std::vector<std::string> models;

  // deqrease: token model id and settings for tiers 2..k.
  std::string deqrease_model;
  std::vector<deqrease::DeqreaseParams> deqrease_tiers;

  // injection: always three tiers (reference, level 1, level 2).
  InjectionEngine injection_engine = InjectionEngine::kRules;
  std::string injection_model;  // llm engine only
  std::string level1_prompt;    // {output} is the text to degrade
  std::string level2_prompt;

  // Throws ConfigError on an inconsistent plan.
  void validate() const;

  nlohmann::json to_json() const;
};

struct DroppedSample {
  std::string id;
  std::string reason;
};

struct BuildOptions {
  std::string phase;
  std::uint64_t seed = 0;
  std::size_t concurrency = 1;
  // Progress lines; may be called from worker threads, one call at a time.
  std::function<void(std::string_view)> log;
};

struct BuildResult {
  core::HierarchyDataset dataset;
  std::vector<DroppedSample> dropped;

  nlohmann::json log_json() const;  // drops plus per-sample mutation records
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

// Renders the generation prompt and asks `generator` for the tier-1 output.
// Throws GenerationError naming the input on transport failure or an empty
// response.
core::TierOutput generate_baseline(const core::TaskInput& input, const GenerationTask& task,
                                   const TextGenerator& generator, std::string_view model_id);

// One sample per input; an input whose tiers cannot all be produced is
// dropped with its reason, never emitted partially. Output order follows the
// input order regardless of concurrency. Throws ConfigError up front when the
// plan names a backend that is not configured.
BuildResult build_hierarchy(const std::vector<core::TaskInput>& inputs,
                            const GenerationTask& task, const TierPlan& plan,
                            const Backends& backends, const BuildOptions& options);

}  // namespace tierbench::degrade
