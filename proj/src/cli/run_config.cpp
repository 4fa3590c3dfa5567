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


#include "tierbench/cli/run_config.hpp"

#include <filesystem>

#include "tierbench/tokenmodel/remote_model.hpp"
#include "tierbench/util/error.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/util/resources.hpp"
#include "tierbench/util/text.hpp"
#include "tierbench/validate/two_way.hpp"

namespace tierbench::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string resolve(const std::string& base_dir, const std::string& ref) {
  if (ref.empty() || ref.rfind("builtin:", 0) == 0) return ref;
  const fs::path p(ref);
  if (p.is_absolute() || base_dir.empty()) return ref;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

std::string load_checked(const std::string& ref, const std::string& what) {
  try {
    return util::load_text(ref);
  } catch (const Error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

judge::JudgeConfig parse_judge(json j, const RunConfig& config, const std::string& base_dir) {
  if (j.contains("prompt") && j.at("prompt").is_string()) {
    j["prompt"] = resolve(base_dir, j.at("prompt").get<std::string>());
  }
  const bool explicit_seed = j.contains("oracle") && j.at("oracle").contains("seed");
  judge::JudgeConfig c;
  try {
    c = judge::JudgeConfig::from_json(j);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("judge configuration: ") + e.what());
  }
  const bool synthetic =
      c.backend == judge::JudgeBackend::kOracle || c.backend == judge::JudgeBackend::kReversed;
  if (synthetic && c.oracle.qualities.empty()) c.oracle.qualities = config.synthetic_qualities;
  if (synthetic && !explicit_seed) {
    c.oracle.seed = util::mix_seed(config.seed, util::stable_hash(c.id));
  }
  return c;
}

EndpointSpec parse_endpoint(const json& j) {
  EndpointSpec e;
  e.endpoint.base_url = j.at("base_url").get<std::string>();
  e.endpoint.api_key = util::resolve_api_key(j.value("api_key", ""));
  e.endpoint.timeout = std::chrono::milliseconds(j.value("timeout_ms", 60000));
  e.endpoint.max_in_flight = j.value("max_in_flight", std::size_t{4});
  e.retry.max_attempts = j.value("max_attempts", 3);
  e.retry.initial_backoff = std::chrono::milliseconds(j.value("initial_backoff_ms", 250));
  return e;
}

ModelSpec parse_model(const json& j, const std::string& base_dir) {
  ModelSpec m;
  const auto backend = j.at("backend").get<std::string>();
  if (backend == "markov") {
    m.backend = ModelBackend::kMarkov;
    m.corpus = resolve(base_dir, j.at("corpus").get<std::string>());
    m.order = j.value("order", 2);
    m.tokenizer = tokenmodel::parse_tokenizer(j.value("tokenizer", "whitespace"));
    m.end_token = j.value("end_token", "</s>");
    m.max_tokens = j.value("max_tokens", std::size_t{48});
  } else if (backend == "remote") {
    m.backend = ModelBackend::kRemote;
    m.endpoint = j.at("endpoint").get<std::string>();
    m.model = j.at("model").get<std::string>();
    m.max_tokens = j.value("max_tokens", std::size_t{1024});
    m.max_top_logprobs = j.value("max_top_logprobs", 20);
    m.max_context_chars = j.value("max_context_chars", std::size_t{0});
    m.end_token = j.value("end_token", "<|endoftext|>");
  } else {
    throw ConfigError("unknown model backend: '" + backend + "'");
  }
  return m;
}

degrade::TierPlan parse_plan(const json& j, const std::string& base_dir) {
  degrade::TierPlan p;
  p.strategy = degrade::parse_strategy(j.at("strategy").get<std::string>());
  p.k = j.value("k", 3);
  switch (p.strategy) {
    case degrade::Strategy::kReducedCapacity:
      p.models = j.at("models").get<std::vector<std::string>>();
      break;
    case degrade::Strategy::kDeqrease:
      p.deqrease_model = j.at("model").get<std::string>();
      for (const auto& t : j.at("tiers")) {
        try {
          p.deqrease_tiers.push_back(deqrease::DeqreaseParams::from_json(t));
        } catch (const ConfigError&) {
          throw;
        } catch (const Error& e) {
          throw ConfigError(std::string("deqrease tier: ") + e.what());
        }
      }
      break;
    case degrade::Strategy::kInjection: {
      const auto engine = j.value("engine", "rules");
      if (engine == "rules") {
        p.injection_engine = degrade::InjectionEngine::kRules;
      } else if (engine == "llm") {
        p.injection_engine = degrade::InjectionEngine::kLlm;
        p.injection_model = j.at("model").get<std::string>();
        p.level1_prompt = load_checked(
            resolve(base_dir, j.value("level1_prompt", "builtin:prompts/inject/level1.txt")),
            "level-1 injection prompt");
        p.level2_prompt = load_checked(
            resolve(base_dir, j.value("level2_prompt", "builtin:prompts/inject/level2.txt")),
            "level-2 injection prompt");
      } else {
        throw ConfigError("unknown injection engine: '" + engine + "'");
      }
      break;
    }
  }
  return p;
}

std::string default_generation_prompt(core::TaskKind kind) {
  std::string name(core::to_string(kind));
  for (auto& c : name) {
    if (c == '-') c = '_';
  }
  return "builtin:prompts/generate/" + name + ".txt";
}

}  // namespace

RunConfig RunConfig::from_json(const json& j, const std::string& base_dir,
                               std::optional<std::uint64_t> seed_override) {
  try {
    RunConfig c;
    try {
      c.task = core::parse_task_kind(j.at("task").get<std::string>());
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
    c.inputs = resolve(base_dir, j.at("inputs").get<std::string>());
    c.max_inputs = j.value("max_inputs", std::size_t{0});
    c.seed = seed_override ? *seed_override : j.value("seed", std::uint64_t{0});
    c.concurrency = j.value("concurrency", std::size_t{1});
    c.top_m = j.value("top_m", std::size_t{3});
    c.phase = j.value("phase", 1);
    c.output_dir = resolve(base_dir, j.value("output_dir", ""));
    if (j.contains("survivors")) c.survivors = resolve(base_dir, j.at("survivors").get<std::string>());
    c.synthetic_qualities = j.value("synthetic_qualities", std::vector<double>{});

    c.generation.kind = c.task;
    std::string prompt_ref = default_generation_prompt(c.task);
    if (j.contains("generation")) {
      const auto& g = j.at("generation");
      prompt_ref = resolve(base_dir, g.value("prompt", prompt_ref));
      c.generation.baseline_model = g.value("model", "");
    }
    c.generation.prompt_template = load_checked(prompt_ref, "generation prompt");

    if (j.contains("endpoints")) {
      for (const auto& [id, e] : j.at("endpoints").items()) c.endpoints[id] = parse_endpoint(e);
    }
    if (j.contains("models")) {
      for (const auto& [id, m] : j.at("models").items()) c.models[id] = parse_model(m, base_dir);
    }
    c.plan = parse_plan(j.at("tier_plan"), base_dir);

    const auto& v = j.at("validators");
    c.forward = parse_judge(v.at("forward"), c, base_dir);
    c.backward = parse_judge(v.at("backward"), c, base_dir);
    if (j.contains("candidates")) {
      for (const auto& cj : j.at("candidates")) c.candidates.push_back(parse_judge(cj, c, base_dir));
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed run configuration: ") + e.what());
  }
}

RunConfig RunConfig::load(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::string text;
  try {
    text = util::read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  const auto base = fs::path(path).parent_path().string();
  auto config = from_json(j, base, seed_override);
  config.validate();
  return config;
}

void RunConfig::validate() const {
  if (concurrency < 1) throw ConfigError("concurrency must be >= 1");
  if (top_m < 1) throw ConfigError("top_m must be >= 1");
  if (phase < 1) throw ConfigError("phase must be >= 1");
  for (const auto& [id, m] : models) {
    if (m.backend == ModelBackend::kRemote && !endpoints.contains(m.endpoint)) {
      throw ConfigError("model '" + id + "' uses undefined endpoint '" + m.endpoint + "'");
    }
    if (m.backend == ModelBackend::kMarkov && m.max_tokens < 1) {
      throw ConfigError("model '" + id + "' max_tokens must be >= 1");
    }
  }
  plan.validate();
  auto require_model = [&](const std::string& id, const char* role) {
    if (!models.contains(id)) {
      throw ConfigError(std::string(role) + " model '" + id + "' is not defined");
    }
  };
  switch (plan.strategy) {
    case degrade::Strategy::kReducedCapacity:
      for (const auto& m : plan.models) require_model(m, "tier");
      break;
    case degrade::Strategy::kDeqrease:
      generation.validate();
      require_model(generation.baseline_model, "baseline");
      require_model(plan.deqrease_model, "deqrease");
      break;
    case degrade::Strategy::kInjection:
      if (!generation.baseline_model.empty()) require_model(generation.baseline_model, "baseline");
      if (plan.injection_engine == degrade::InjectionEngine::kLlm) {
        require_model(plan.injection_model, "injection");
      }
      break;
  }
  auto check_judge = [&](const judge::JudgeConfig& c) {
    c.validate();
    if (c.backend == judge::JudgeBackend::kRemote && !endpoints.contains(c.endpoint)) {
      throw ConfigError("judge '" + c.id + "' uses undefined endpoint '" + c.endpoint + "'");
    }
  };
  check_judge(forward);
  check_judge(backward);
  validate::require_validator_scale(forward);
  validate::require_validator_scale(backward);
  std::map<std::string, int> seen;
  for (const auto& c : candidates) {
    check_judge(c);
    if (++seen[c.id] > 1) throw ConfigError("duplicate candidate id '" + c.id + "'");
  }
}

BackendSet::BackendSet(const RunConfig& config) {
  for (const auto& [id, e] : config.endpoints) {
    clients_[id] = std::make_shared<util::OpenAiClient>(e.endpoint, e.retry);
  }
  for (const auto& [id, m] : config.models) {
    if (m.backend == ModelBackend::kMarkov) {
      auto model = std::make_shared<const tokenmodel::MarkovModel>([&] {
        try {
          return tokenmodel::train_markov(load_checked(m.corpus, "corpus for '" + id + "'"),
                                          m.order, m.tokenizer, m.end_token);
        } catch (const InvalidArgument& e) {
          throw ConfigError("model '" + id + "': " + e.what());
        }
      }());
      generation_.add_generator(id, std::make_shared<degrade::MarkovGenerator>(model, m.max_tokens));
      generation_.add_token_model(id, [model](const std::string&) { return model; });
    } else {
      auto client = clients_.at(m.endpoint);
      generation_.add_generator(id, std::make_shared<degrade::ChatGenerator>(
                                        client, m.model, static_cast<int>(m.max_tokens)));
      tokenmodel::RemoteModelOptions options;
      options.model = m.model;
      options.max_top_logprobs = m.max_top_logprobs;
      options.max_context_chars = m.max_context_chars;
      options.end_token = m.end_token;
      generation_.add_token_model(id, [client, options](const std::string& prompt) {
        auto o = options;
        o.prompt_prefix = prompt;
        return std::make_shared<const tokenmodel::RemoteTokenModel>(client, o);
      });
    }
  }
}

std::shared_ptr<const util::ChatClient> BackendSet::client_for(
    const judge::JudgeConfig& judge) const {
  if (judge.backend != judge::JudgeBackend::kRemote) return nullptr;
  auto it = clients_.find(judge.endpoint);
  if (it == clients_.end()) {
    throw ConfigError("judge '" + judge.id + "' uses undefined endpoint '" + judge.endpoint + "'");
  }
  return it->second;
}

}  // namespace tierbench::cli
