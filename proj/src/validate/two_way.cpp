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


#include "tierbench/validate/two_way.hpp"

#include "tierbench/util/error.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::validate {
namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> read_optional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

const std::vector<TwoWayScore>* lookup(const ScoreTable& scores, const std::string& id) {
  auto it = scores.find(id);
  return it == scores.end() ? nullptr : &it->second;
}

// Averages for tiers 1..k, or nullopt with a reason when any is missing.
std::optional<std::vector<double>> tier_averages(const core::HierarchySample& sample,
                                                 const ScoreTable& scores, std::string& why) {
  const auto* entries = lookup(scores, sample.input.id);
  if (!entries) {
    why = "no scores";
    return std::nullopt;
  }
  std::vector<double> averages;
  for (const auto& out : sample.outputs) {
    const TwoWayScore* found = nullptr;
    for (const auto& e : *entries) {
      if (e.tier == out.tier) found = &e;
    }
    if (!found) {
      why = "tier " + std::to_string(out.tier) + " has no score";
      return std::nullopt;
    }
    if (!found->scored()) {
      why = "tier " + std::to_string(out.tier) + ": " + found->failure;
      return std::nullopt;
    }
    averages.push_back(*found->average);
  }
  return averages;
}

}  // namespace

nlohmann::json TwoWayScore::to_json() const {
  nlohmann::json j = {{"sample", sample_id},
                      {"tier", tier},
                      {"forward", optional_number(forward)},
                      {"backward", optional_number(backward)},
                      {"average", optional_number(average)}};
  if (!failure.empty()) j["failure"] = failure;
  return j;
}

TwoWayScore TwoWayScore::from_json(const nlohmann::json& j) {
  TwoWayScore s;
  s.sample_id = j.at("sample").get<std::string>();
  s.tier = j.at("tier").get<int>();
  s.forward = read_optional(j, "forward");
  s.backward = read_optional(j, "backward");
  s.average = read_optional(j, "average");
  s.failure = j.value("failure", "");
  return s;
}

nlohmann::json to_json(const ScoreTable& scores) {
  auto arr = nlohmann::json::array();
  for (const auto& [id, entries] : scores) {
    for (const auto& e : entries) arr.push_back(e.to_json());
  }
  return arr;
}

ScoreTable score_table_from_json(const nlohmann::json& j) {
  try {
    ScoreTable table;
    for (const auto& item : j) {
      auto s = TwoWayScore::from_json(item);
      table[s.sample_id].push_back(std::move(s));
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed score table: ") + e.what());
  }
}

void require_validator_scale(const judge::JudgeConfig& config) {
  if (config.scale.min != 0.0 || config.scale.max != 100.0) {
    throw ConfigError("validator '" + config.id + "' must use scale [0, 100], got [" +
                      util::format_double(config.scale.min) + ", " +
                      util::format_double(config.scale.max) + "]");
  }
}

TwoWayScore combine(const judge::JudgeVerdict& forward, const judge::JudgeVerdict& backward) {
  TwoWayScore s;
  s.sample_id = forward.sample_id;
  s.tier = forward.tier;
  s.forward = forward.score;
  s.backward = backward.score;
  if (forward.ok() && backward.ok()) {
    s.average = (*forward.score + *backward.score) / 2.0;
  } else if (!forward.ok()) {
    s.failure = "forward: " + forward.failure.value_or("no score");
  } else {
    s.failure = "backward: " + backward.failure.value_or("no score");
  }
  return s;
}

std::vector<TwoWayScore> two_way_score(const judge::Judge& forward, const judge::Judge& backward,
                                       const core::HierarchySample& sample) {
  require_validator_scale(forward.config());
  require_validator_scale(backward.config());
  std::vector<TwoWayScore> out;
  for (const auto& o : sample.outputs) {
    out.push_back(combine(forward.score(sample.input, o), backward.score(sample.input, o)));
  }
  return out;
}

ScoreTable score_dataset(const judge::Judge& forward, const judge::Judge& backward,
                         const core::HierarchyDataset& dataset, std::size_t limit) {
  require_validator_scale(forward.config());
  require_validator_scale(backward.config());
  const auto f = judge::score_batch(forward, dataset.samples, limit);
  const auto b = judge::score_batch(backward, dataset.samples, limit);
  ScoreTable table;
  for (std::size_t i = 0; i < f.size(); ++i) {
    table[f[i].sample_id].push_back(combine(f[i], b[i]));
  }
  return table;
}

nlohmann::json FilterReport::to_json() const {
  auto rejected_json = nlohmann::json::array();
  for (const auto& r : rejected) {
    nlohmann::json item = {{"id", r.sample_id}, {"reason", r.reason}, {"detail", r.detail}};
    item["pair"] = r.pair ? nlohmann::json::array({r.pair->first, r.pair->second})
                          : nlohmann::json(nullptr);
    rejected_json.push_back(item);
  }
  return {{"total", total()},
          {"retained_count", retained.size()},
          {"rejected_count", rejected.size()},
          {"retained", retained},
          {"rejected", rejected_json}};
}

FilterResult filter_hierarchy(const core::HierarchyDataset& dataset, const ScoreTable& scores) {
  FilterResult result;
  result.dataset.kind = dataset.kind;
  result.dataset.k = dataset.k;
  result.dataset.phase = dataset.phase;
  for (const auto& sample : dataset.samples) {
    std::string why;
    const auto averages = tier_averages(sample, scores, why);
    if (!averages) {
      result.report.rejected.push_back({sample.input.id, "unscored", why, std::nullopt});
      continue;
    }
    std::optional<Rejection> rejection;
    for (std::size_t u = 0; u + 1 < averages->size(); ++u) {
      if ((*averages)[u] < (*averages)[u + 1]) {
        const int upper = sample.outputs[u].tier;
        const int lower = sample.outputs[u + 1].tier;
        rejection = Rejection{sample.input.id, "order",
                              "tier " + std::to_string(upper) + " scored below tier " +
                                  std::to_string(lower),
                              std::make_pair(upper, lower)};
        break;
      }
    }
    if (rejection) {
      result.report.rejected.push_back(std::move(*rejection));
    } else {
      result.report.retained.push_back(sample.input.id);
      result.dataset.samples.push_back(sample);
    }
  }
  return result;
}

nlohmann::json GapReport::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& g : gaps) {
    arr.push_back({{"upper", g.upper}, {"lower", g.lower}, {"mean", g.mean}});
  }
  return {{"samples", samples}, {"gaps", arr}};
}

GapReport GapReport::from_json(const nlohmann::json& j) {
  try {
    GapReport r;
    r.samples = j.at("samples").get<std::size_t>();
    for (const auto& g : j.at("gaps")) {
      r.gaps.push_back(
          {g.at("upper").get<int>(), g.at("lower").get<int>(), g.at("mean").get<double>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed gap report: ") + e.what());
  }
}

GapReport gap_metrics(const core::HierarchyDataset& filtered, const ScoreTable& scores) {
  if (filtered.samples.empty()) throw InvalidArgument("gap metrics need at least one sample");
  std::vector<double> sums;
  for (const auto& sample : filtered.samples) {
    std::string why;
    const auto averages = tier_averages(sample, scores, why);
    if (!averages) throw InvalidArgument("sample " + sample.input.id + " is " + why);
    if (sums.empty()) sums.assign(averages->size() > 0 ? averages->size() - 1 : 0, 0.0);
    if (averages->size() != sums.size() + 1) {
      throw InvalidArgument("sample " + sample.input.id + " has a different tier count");
    }
    for (std::size_t u = 0; u < sums.size(); ++u) sums[u] += (*averages)[u] - (*averages)[u + 1];
  }
  GapReport report;
  report.samples = filtered.samples.size();
  const auto n = static_cast<double>(report.samples);
  for (std::size_t u = 0; u < sums.size(); ++u) {
    const int upper = filtered.samples.front().outputs[u].tier;
    report.gaps.push_back({upper, upper + 1, sums[u] / n});
  }
  return report;
}

bool is_more_refined(const GapReport& candidate, const GapReport& reference) {
  if (candidate.gaps.size() != reference.gaps.size()) {
    throw InvalidArgument("gap reports cover different tier counts");
  }
  for (std::size_t i = 0; i < candidate.gaps.size(); ++i) {
    if (candidate.gaps[i].mean > reference.gaps[i].mean) return false;
  }
  return true;
}

}  // namespace tierbench::validate
