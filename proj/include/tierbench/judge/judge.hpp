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

// Evaluators that map (input, output) to a scalar score.
//
// Synthetic backends (oracle, constant, reversed) score from the latent
// quality level recorded in an output's provenance and draw their noise from
// a per-verdict random state, so results never depend on scheduling. The
// remote backend renders a prompt template, asks a chat endpoint with greedy
// decoding, and extracts a number from the reply.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tierbench/core/types.hpp"
#include "tierbench/judge/score_extraction.hpp"
#include "tierbench/util/openai_client.hpp"

namespace tierbench::judge {

enum class JudgeBackend { kOracle, kConstant, kReversed, kRemote };

std::string_view to_string(JudgeBackend backend);
JudgeBackend parse_judge_backend(std::string_view text);

struct OracleParams {
  // Quality of level 1, 2, ..., strictly decreasing.
  std::vector<double> qualities;
  double sigma = 0.0;         // Gaussian noise standard deviation
  double quantization = 0.0;  // round scores to this step; 0 = off
  std::uint64_t seed = 0;

  bool operator==(const OracleParams&) const = default;
};

struct JudgeConfig {
  std::string id;
  JudgeBackend backend = JudgeBackend::kOracle;
  Scale scale{1.0, 7.0};
  OracleParams oracle;

  // Remote only.
  std::string endpoint;  // name of a configured endpoint
  std::string model;
  std::string prompt_template;  // {input}, {output}, {aux}
  std::string prompt_source;    // where the template came from, for the record
  std::vector<std::string> extraction_rules;  // empty = default_rules()
  int max_tokens = 1024;
  // Model asked to restate the score when no rule matches the reply.
  std::string post_processor_model;

  // Id of the configuration this one was revised from, if any.
  std::string derived_from;

  // Throws ConfigError when the configuration is unusable.
  void validate() const;

  nlohmann::json to_json() const;
  // Templates are given as "prompt": "builtin:<name>" or a file path.
  static JudgeConfig from_json(const nlohmann::json& j);

  bool operator==(const JudgeConfig&) const = default;
};

struct JudgeVerdict {
  std::string judge_id;
  std::string sample_id;
  int tier = 1;
  std::optional<double> score;     // absent on failure
  std::string raw;                 // remote reply, empty for synthetic judges
  std::optional<std::string> failure;

  bool ok() const { return score.has_value(); }

  nlohmann::json to_json() const;
  static JudgeVerdict from_json(const nlohmann::json& j);

  bool operator==(const JudgeVerdict&) const = default;
};

class Judge {
 public:
  // `chat` is required for the remote backend and ignored otherwise.
  explicit Judge(JudgeConfig config, std::shared_ptr<const util::ChatClient> chat = nullptr);

  const JudgeConfig& config() const { return config_; }
  const std::string& id() const { return config_.id; }

  // Never throws for per-verdict problems: transport and extraction failures
  // come back as verdicts with a failure note.
  JudgeVerdict score(const core::TaskInput& input, const core::TierOutput& output) const;

  // The prompt the remote backend would send.
  std::string render_prompt(const core::TaskInput& input, const core::TierOutput& output) const;

 private:
  JudgeVerdict score_synthetic(const core::TaskInput& input,
                               const core::TierOutput& output) const;
  JudgeVerdict score_remote(const core::TaskInput& input, const core::TierOutput& output) const;

  JudgeConfig config_;
  std::shared_ptr<const util::ChatClient> chat_;
  std::vector<CompiledRule> rules_;
};

// One verdict per (sample, tier), ordered by sample then tier regardless of
// how the work was scheduled. limit >= 1 bounds concurrent scoring calls.
std::vector<JudgeVerdict> score_batch(const Judge& judge,
                                      const std::vector<core::HierarchySample>& samples,
                                      std::size_t limit);

}  // namespace tierbench::judge
