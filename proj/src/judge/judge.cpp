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

#include "tierbench/judge/judge.hpp"

#include <cmath>

#include "tierbench/util/error.hpp"
#include "tierbench/util/parallel.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/util/resources.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::judge {

std::string_view to_string(JudgeBackend backend) {
  switch (backend) {
    case JudgeBackend::kOracle:
      return "oracle";
    case JudgeBackend::kConstant:
      return "constant";
    case JudgeBackend::kReversed:
      return "reversed";
    case JudgeBackend::kRemote:
      return "remote";
  }
  return "unknown";
}

JudgeBackend parse_judge_backend(std::string_view text) {
  if (text == "oracle") return JudgeBackend::kOracle;
  if (text == "constant") return JudgeBackend::kConstant;
  if (text == "reversed") return JudgeBackend::kReversed;
  if (text == "remote") return JudgeBackend::kRemote;
  throw ConfigError("unknown judge backend: '" + std::string(text) + "'");
}

void JudgeConfig::validate() const {
  if (id.empty()) throw ConfigError("judge id must not be empty");
  const std::string where = "judge '" + id + "': ";
  if (!(scale.min < scale.max)) throw ConfigError(where + "scale min must be below max");
  switch (backend) {
    case JudgeBackend::kOracle:
    case JudgeBackend::kReversed:
      if (oracle.qualities.empty()) throw ConfigError(where + "oracle qualities are empty");
      for (std::size_t i = 1; i < oracle.qualities.size(); ++i) {
        if (!(oracle.qualities[i] < oracle.qualities[i - 1])) {
          throw ConfigError(where + "oracle qualities must be strictly decreasing");
        }
      }
      if (!(oracle.sigma >= 0.0)) throw ConfigError(where + "sigma must be >= 0");
      if (!(oracle.quantization >= 0.0)) throw ConfigError(where + "quantization must be >= 0");
      break;
    case JudgeBackend::kConstant:
      break;
    case JudgeBackend::kRemote:
      if (model.empty()) throw ConfigError(where + "remote judge needs a model");
      if (!util::has_placeholder(prompt_template, "input") ||
          !util::has_placeholder(prompt_template, "output")) {
        throw ConfigError(where + "prompt template must contain {input} and {output}");
      }
      if (max_tokens < 1) throw ConfigError(where + "max_tokens must be >= 1");
      compile_rules(extraction_rules.empty() ? default_rules() : extraction_rules);
      break;
  }
}

nlohmann::json JudgeConfig::to_json() const {
  nlohmann::json j = {
      {"id", id},
      {"backend", to_string(backend)},
      {"scale", {scale.min, scale.max}},
  };
  if (backend == JudgeBackend::kOracle || backend == JudgeBackend::kReversed) {
    j["oracle"] = {{"qualities", oracle.qualities},
                   {"sigma", oracle.sigma},
                   {"quantization", oracle.quantization},
                   {"seed", oracle.seed}};
  }
  if (backend == JudgeBackend::kRemote) {
    j["endpoint"] = endpoint;
    j["model"] = model;
    if (!prompt_source.empty()) {
      j["prompt"] = prompt_source;
    } else {
      j["prompt_text"] = prompt_template;
    }
    if (!extraction_rules.empty()) j["extraction_rules"] = extraction_rules;
    j["max_tokens"] = max_tokens;
    if (!post_processor_model.empty()) j["post_processor_model"] = post_processor_model;
  }
  if (!derived_from.empty()) j["derived_from"] = derived_from;
  return j;
}

JudgeConfig JudgeConfig::from_json(const nlohmann::json& j) {
  try {
    JudgeConfig c;
    c.id = j.at("id").get<std::string>();
    c.backend = parse_judge_backend(j.at("backend").get<std::string>());
    if (j.contains("scale")) {
      const auto& s = j.at("scale");
      if (!s.is_array() || s.size() != 2) throw ConfigError("scale must be [min, max]");
      c.scale = {s[0].get<double>(), s[1].get<double>()};
    }
    if (j.contains("oracle")) {
      const auto& o = j.at("oracle");
      c.oracle.qualities = o.value("qualities", std::vector<double>{});
      c.oracle.sigma = o.value("sigma", 0.0);
      c.oracle.quantization = o.value("quantization", 0.0);
      c.oracle.seed = o.value("seed", std::uint64_t{0});
    }
    c.endpoint = j.value("endpoint", "");
    c.model = j.value("model", "");
    if (j.contains("prompt")) {
      c.prompt_source = j.at("prompt").get<std::string>();
      c.prompt_template = util::load_text(c.prompt_source);
    } else {
      c.prompt_template = j.value("prompt_text", "");
    }
    c.extraction_rules = j.value("extraction_rules", std::vector<std::string>{});
    c.max_tokens = j.value("max_tokens", 1024);
    c.post_processor_model = j.value("post_processor_model", "");
    c.derived_from = j.value("derived_from", "");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed judge configuration: ") + e.what());
  }
}

nlohmann::json JudgeVerdict::to_json() const {
  nlohmann::json j = {{"judge", judge_id}, {"sample", sample_id}, {"tier", tier}};
  j["score"] = score ? nlohmann::json(*score) : nlohmann::json(nullptr);
  if (!raw.empty()) j["raw"] = raw;
  if (failure) j["failure"] = *failure;
  return j;
}

JudgeVerdict JudgeVerdict::from_json(const nlohmann::json& j) {
  JudgeVerdict v;
  v.judge_id = j.at("judge").get<std::string>();
  v.sample_id = j.at("sample").get<std::string>();
  v.tier = j.at("tier").get<int>();
  if (j.contains("score") && !j.at("score").is_null()) v.score = j.at("score").get<double>();
  v.raw = j.value("raw", "");
  if (j.contains("failure")) v.failure = j.at("failure").get<std::string>();
  return v;
}

Judge::Judge(JudgeConfig config, std::shared_ptr<const util::ChatClient> chat)
    : config_(std::move(config)), chat_(std::move(chat)) {
  config_.validate();
  if (config_.backend == JudgeBackend::kRemote) {
    if (!chat_) throw ConfigError("judge '" + config_.id + "': remote judge needs a client");
    rules_ = compile_rules(config_.extraction_rules.empty() ? default_rules()
                                                            : config_.extraction_rules);
  }
}

std::string Judge::render_prompt(const core::TaskInput& input,
                                 const core::TierOutput& output) const {
  return util::render_template(config_.prompt_template, {{"input", input.content},
                                                         {"output", output.content},
                                                         {"aux", input.aux.value_or("")}});
}

JudgeVerdict Judge::score(const core::TaskInput& input, const core::TierOutput& output) const {
  if (config_.backend == JudgeBackend::kRemote) return score_remote(input, output);
  return score_synthetic(input, output);
}

JudgeVerdict Judge::score_synthetic(const core::TaskInput& input,
                                    const core::TierOutput& output) const {
  JudgeVerdict v{config_.id, input.id, output.tier, std::nullopt, "", std::nullopt};
  if (config_.backend == JudgeBackend::kConstant) {
    v.score = config_.scale.midpoint();
    return v;
  }

  const auto& q = config_.oracle.qualities;
  const int k = static_cast<int>(q.size());
  // The latent level travels with the content; the tier slot is only a fallback.
  int level = output.provenance.level;
  if (level < 1 || level > k) level = output.tier;
  if (level < 1 || level > k) {
    v.failure = "no oracle quality for level " + std::to_string(output.provenance.level);
    return v;
  }
  const int index = config_.backend == JudgeBackend::kReversed ? k - level : level - 1;
  double s = q[static_cast<std::size_t>(index)];
  if (config_.oracle.sigma > 0.0) {
    util::Rng rng(util::mix_seed(config_.oracle.seed, util::stable_hash(input.id),
                                 static_cast<std::uint64_t>(output.tier)));
    s += config_.oracle.sigma * rng.normal();
  }
  if (config_.oracle.quantization > 0.0) {
    s = std::round(s / config_.oracle.quantization) * config_.oracle.quantization;
  }
  v.score = config_.scale.clamp(s);
  return v;
}

JudgeVerdict Judge::score_remote(const core::TaskInput& input,
                                 const core::TierOutput& output) const {
  JudgeVerdict v{config_.id, input.id, output.tier, std::nullopt, "", std::nullopt};
  try {
    v.raw = chat_->chat(config_.model, render_prompt(input, output), config_.max_tokens);
  } catch (const Error& e) {
    v.failure = std::string("request failed: ") + e.what();
    return v;
  }
  auto extraction = extract_score(v.raw, rules_, config_.scale);
  if (!extraction.score && !config_.post_processor_model.empty()) {
    try {
      const auto prompt = util::render_template(util::resource("prompts/extract/score.txt"),
                                                {{"output", v.raw}});
      const auto restated = chat_->chat(config_.post_processor_model, prompt, 16);
      auto second = extract_score(restated, rules_, config_.scale);
      if (second.score) extraction = std::move(second);
    } catch (const Error&) {
      // Keep the original extraction failure.
    }
  }
  if (extraction.score) {
    v.score = extraction.score;
  } else {
    v.failure = "extraction: " + extraction.failure;
  }
  return v;
}

std::vector<JudgeVerdict> score_batch(const Judge& judge,
                                      const std::vector<core::HierarchySample>& samples,
                                      std::size_t limit) {
  if (limit < 1) throw InvalidArgument("concurrency limit must be >= 1");
  struct Item {
    const core::TaskInput* input;
    const core::TierOutput* output;
  };
  std::vector<Item> items;
  for (const auto& s : samples) {
    for (const auto& o : s.outputs) items.push_back({&s.input, &o});
  }
  std::vector<JudgeVerdict> verdicts(items.size());
  util::parallel_for(items.size(), limit, [&](std::size_t i) {
    verdicts[i] = judge.score(*items[i].input, *items[i].output);
  });
  return verdicts;
}

}  // namespace tierbench::judge
