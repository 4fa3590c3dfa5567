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

#include "tierbench/degrade/hierarchy_builder.hpp"

#include <mutex>
#include <optional>

#include "tierbench/core/serialization.hpp"
#include "tierbench/mutate/mutate.hpp"
#include "tierbench/util/parallel.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::degrade {
namespace {

using core::Provenance;
using core::ProvenanceKind;
using core::TaskInput;
using core::TierOutput;

std::string render_generation_prompt(const TaskInput& input, const GenerationTask& task) {
  return util::render_template(task.prompt_template,
                               {{"input", input.content}, {"aux", input.aux.value_or("")}});
}

TierOutput make_output(int tier, std::string content, ProvenanceKind kind, std::string model) {
  TierOutput out;
  out.tier = tier;
  out.content = std::move(content);
  out.provenance.kind = kind;
  out.provenance.level = tier;
  out.provenance.model = std::move(model);
  return out;
}

std::string checked_generate(const TextGenerator& generator, std::string_view prompt,
                             const std::string& model, const std::string& input_id) {
  std::string text;
  try {
    text = generator.generate(prompt);
  } catch (const Error& e) {
    throw GenerationError("input " + input_id + ": model '" + model + "' failed: " + e.what());
  }
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw GenerationError("input " + input_id + ": empty response from model '" + model + "'");
  }
  return text;
}

class SampleBuilder {
 public:
  SampleBuilder(const GenerationTask& task, const TierPlan& plan, const Backends& backends,
                const BuildOptions& options)
      : task_(task), plan_(plan), backends_(backends), options_(options) {}

  core::HierarchySample build(const TaskInput& input) const {
    core::HierarchySample sample;
    sample.input = input;
    switch (plan_.strategy) {
      case Strategy::kReducedCapacity:
        sample.outputs = reduced_capacity(input);
        break;
      case Strategy::kDeqrease:
        sample.outputs = deqrease_tiers(input);
        break;
      case Strategy::kInjection:
        sample.outputs = injection(input);
        break;
    }
    return sample;
  }

 private:
  std::vector<TierOutput> reduced_capacity(const TaskInput& input) const {
    const auto prompt = render_generation_prompt(input, task_);
    std::vector<TierOutput> outputs;
    for (int tier = 1; tier <= plan_.k; ++tier) {
      const auto& model = plan_.models[static_cast<std::size_t>(tier - 1)];
      auto text = checked_generate(backends_.generator(model), prompt, model, input.id);
      outputs.push_back(make_output(tier, std::move(text),
                                    tier == 1 ? ProvenanceKind::kBaseline
                                              : ProvenanceKind::kReducedCapacity,
                                    model));
    }
    return outputs;
  }

  std::vector<TierOutput> deqrease_tiers(const TaskInput& input) const {
    std::vector<TierOutput> outputs;
    outputs.push_back(generate_baseline(input, task_, backends_.generator(task_.baseline_model),
                                        task_.baseline_model));
    const auto model =
        backends_.token_model(plan_.deqrease_model, render_generation_prompt(input, task_));
    const auto baseline = model->tokenize(outputs.front().content);
    if (baseline.empty()) {
      throw GenerationError("input " + input.id + ": baseline has no tokens");
    }
    for (int tier = 2; tier <= plan_.k; ++tier) {
      auto params = plan_.deqrease_tiers[static_cast<std::size_t>(tier - 2)];
      params.seed = util::mix_seed(options_.seed,
                                   util::mix_seed(params.seed, util::stable_hash(input.id),
                                                  static_cast<std::uint64_t>(tier)));
      deqrease::DeqreaseOutput degraded;
      try {
        degraded = deqrease::deqrease_generate(*model, baseline, params);
      } catch (const Error& e) {
        throw GenerationError("input " + input.id + ": tier " + std::to_string(tier) +
                              " decoding failed: " + e.what());
      }
      auto out = make_output(tier, model->detokenize(degraded.tokens), ProvenanceKind::kDeqrease,
                             plan_.deqrease_model);
      out.provenance.params = params.to_json();
      out.provenance.params["baseline_tokens"] = baseline.size();
      out.provenance.params["prefix_len"] = degraded.prefix_len;
      out.provenance.params["sampled_tokens"] = degraded.tokens.size() - degraded.prefix_len;
      out.provenance.params["stopped_at_end"] = degraded.stopped_at_end;
      outputs.push_back(std::move(out));
    }
    return outputs;
  }

  std::vector<TierOutput> injection(const TaskInput& input) const {
    std::vector<TierOutput> outputs;
    if (input.aux && !input.aux->empty()) {
      outputs.push_back(make_output(1, *input.aux, ProvenanceKind::kBaseline, "reference"));
    } else {
      outputs.push_back(generate_baseline(
          input, task_, backends_.generator(task_.baseline_model), task_.baseline_model));
    }
    const auto& reference = outputs.front().content;

    if (plan_.injection_engine == InjectionEngine::kLlm) {
      const auto& gen = backends_.generator(plan_.injection_model);
      auto level1 = checked_generate(
          gen, util::render_template(plan_.level1_prompt, {{"output", reference}}),
          plan_.injection_model, input.id);
      auto level2 = checked_generate(
          gen, util::render_template(plan_.level2_prompt, {{"output", level1}}),
          plan_.injection_model, input.id);
      outputs.push_back(make_output(2, std::move(level1), ProvenanceKind::kInjection,
                                    plan_.injection_model));
      outputs.push_back(make_output(3, std::move(level2), ProvenanceKind::kInjection,
                                    plan_.injection_model));
      for (auto& o : outputs) {
        if (o.tier > 1) o.provenance.params = {{"engine", "llm"}};
      }
      return outputs;
    }

    mutate::DegradedLevels levels;
    try {
      levels = mutate::degrade_levels(
          reference, util::mix_seed(options_.seed, util::stable_hash(input.id)));
    } catch (const InvalidArgument& e) {
      throw GenerationError("input " + input.id + ": injection impossible: " + e.what());
    }
    auto tier2 = make_output(2, std::move(levels.level1), ProvenanceKind::kInjection, "");
    tier2.provenance.mutations = std::move(levels.level1_records);
    tier2.provenance.params = {{"engine", "rules"}};
    auto tier3 = make_output(3, std::move(levels.level2), ProvenanceKind::kInjection, "");
    tier3.provenance.mutations = std::move(levels.level2_records);
    tier3.provenance.params = {{"engine", "rules"}};
    outputs.push_back(std::move(tier2));
    outputs.push_back(std::move(tier3));
    return outputs;
  }

  const GenerationTask& task_;
  const TierPlan& plan_;
  const Backends& backends_;
  const BuildOptions& options_;
};

void require_backends(const std::vector<TaskInput>& inputs, const GenerationTask& task,
                      const TierPlan& plan, const Backends& backends) {
  auto need_baseline = [&] {
    task.validate();
    if (!backends.has_generator(task.baseline_model)) {
      throw ConfigError("no generator backend for model '" + task.baseline_model + "'");
    }
  };
  auto need_generator = [&](const std::string& model) {
    if (!backends.has_generator(model)) {
      throw ConfigError("no generator backend for model '" + model + "'");
    }
  };
  switch (plan.strategy) {
    case Strategy::kReducedCapacity:
      if (!util::has_placeholder(task.prompt_template, "input")) {
        throw ConfigError("generation prompt must contain {input}");
      }
      for (const auto& m : plan.models) need_generator(m);
      break;
    case Strategy::kDeqrease:
      need_baseline();
      if (!backends.has_token_model(plan.deqrease_model)) {
        throw ConfigError("no token model backend for model '" + plan.deqrease_model + "'");
      }
      break;
    case Strategy::kInjection:
      for (const auto& in : inputs) {
        if (!in.aux || in.aux->empty()) {
          need_baseline();
          break;
        }
      }
      if (plan.injection_engine == InjectionEngine::kLlm) need_generator(plan.injection_model);
      break;
  }
}

}  // namespace

void GenerationTask::validate() const {
  if (!util::has_placeholder(prompt_template, "input")) {
    throw ConfigError("generation prompt must contain {input}");
  }
  if (baseline_model.empty()) throw ConfigError("generation task needs a baseline model");
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kReducedCapacity:
      return "reduced-capacity";
    case Strategy::kDeqrease:
      return "deqrease";
    case Strategy::kInjection:
      return "injection";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "reduced-capacity") return Strategy::kReducedCapacity;
  if (text == "deqrease") return Strategy::kDeqrease;
  if (text == "injection") return Strategy::kInjection;
  throw ConfigError("unknown degradation strategy: '" + std::string(text) + "'");
}

void TierPlan::validate() const {
  if (k < 2) throw ConfigError("tier plan needs k >= 2");
  switch (strategy) {
    case Strategy::kReducedCapacity:
      if (models.size() != static_cast<std::size_t>(k)) {
        throw ConfigError("reduced-capacity plan needs exactly k = " + std::to_string(k) +
                          " models, got " + std::to_string(models.size()));
      }
      for (const auto& m : models) {
        if (m.empty()) throw ConfigError("reduced-capacity plan has an empty model id");
      }
      break;
    case Strategy::kDeqrease: {
      if (deqrease_model.empty()) throw ConfigError("deqrease plan needs a token model");
      if (deqrease_tiers.size() != static_cast<std::size_t>(k - 1)) {
        throw ConfigError("deqrease plan needs settings for tiers 2.." + std::to_string(k));
      }
      double previous = 1.0;
      for (const auto& p : deqrease_tiers) {
        try {
          p.validate();
        } catch (const InvalidArgument& e) {
          throw ConfigError(std::string("deqrease tier: ") + e.what());
        }
        if (!(p.prefix_fraction < previous)) {
          throw ConfigError("deqrease prefix fractions must strictly decrease below 1");
        }
        previous = p.prefix_fraction;
      }
      break;
    }
    case Strategy::kInjection:
      if (k != 3) throw ConfigError("injection plan always has k = 3");
      if (injection_engine == InjectionEngine::kLlm) {
        if (injection_model.empty()) throw ConfigError("llm injection needs a model");
        if (!util::has_placeholder(level1_prompt, "output") ||
            !util::has_placeholder(level2_prompt, "output")) {
          throw ConfigError("injection prompts must contain {output}");
        }
      }
      break;
  }
}

nlohmann::json TierPlan::to_json() const {
  nlohmann::json j = {{"strategy", to_string(strategy)}, {"k", k}};
  switch (strategy) {
    case Strategy::kReducedCapacity:
      j["models"] = models;
      break;
    case Strategy::kDeqrease: {
      j["model"] = deqrease_model;
      auto tiers = nlohmann::json::array();
      for (const auto& p : deqrease_tiers) tiers.push_back(p.to_json());
      j["tiers"] = tiers;
      break;
    }
    case Strategy::kInjection:
      j["engine"] = injection_engine == InjectionEngine::kRules ? "rules" : "llm";
      if (injection_engine == InjectionEngine::kLlm) j["model"] = injection_model;
      break;
  }
  return j;
}

nlohmann::json BuildResult::log_json() const {
  auto dropped_json = nlohmann::json::array();
  for (const auto& d : dropped) dropped_json.push_back({{"id", d.id}, {"reason", d.reason}});
  auto mutations = nlohmann::json::array();
  for (const auto& s : dataset.samples) {
    for (const auto& o : s.outputs) {
      if (o.provenance.mutations.empty()) continue;
      auto records = nlohmann::json::array();
      for (const auto& r : o.provenance.mutations) records.push_back(core::to_json(r));
      mutations.push_back({{"id", s.input.id}, {"tier", o.tier}, {"records", records}});
    }
  }
  return {{"emitted", dataset.samples.size()},
          {"dropped", dropped_json},
          {"mutations", mutations}};
}

TierOutput generate_baseline(const TaskInput& input, const GenerationTask& task,
                             const TextGenerator& generator, std::string_view model_id) {
  task.validate();
  const std::string model(model_id);
  auto text = checked_generate(generator, render_generation_prompt(input, task), model, input.id);
  return make_output(1, std::move(text), ProvenanceKind::kBaseline, model);
}

BuildResult build_hierarchy(const std::vector<TaskInput>& inputs, const GenerationTask& task,
                            const TierPlan& plan, const Backends& backends,
                            const BuildOptions& options) {
  plan.validate();
  require_backends(inputs, task, plan, backends);

  const SampleBuilder builder(task, plan, backends, options);
  std::vector<std::optional<core::HierarchySample>> built(inputs.size());
  std::vector<std::string> reasons(inputs.size());
  std::mutex log_mutex;
  auto log = [&](const std::string& line) {
    if (!options.log) return;
    std::lock_guard lock(log_mutex);
    options.log(line);
  };

  util::parallel_for(inputs.size(), options.concurrency, [&](std::size_t i) {
    try {
      built[i] = builder.build(inputs[i]);
      log("built " + inputs[i].id);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      reasons[i] = e.what();
      log("dropped " + inputs[i].id + ": " + reasons[i]);
    }
  });

  BuildResult result;
  result.dataset.kind = task.kind;
  result.dataset.k = plan.k;
  result.dataset.phase = options.phase;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (built[i]) {
      result.dataset.samples.push_back(std::move(*built[i]));
    } else {
      result.dropped.push_back({inputs[i].id, reasons[i]});
    }
  }
  return result;
}

}  // namespace tierbench::degrade
