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


// Two-way validation of hierarchy samples, monotonicity filtering and the
// quality-gap metrics used to compare benchmark phases.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tierbench/core/types.hpp"
#include "tierbench/judge/judge.hpp"

namespace tierbench::validate {

struct TwoWayScore {
  std::string sample_id;
  int tier = 1;
  std::optional<double> forward;
  std::optional<double> backward;
  std::optional<double> average;  // set iff both directions scored
  std::string failure;            // first direction failure, if any

  bool scored() const { return average.has_value(); }

  nlohmann::json to_json() const;
  static TwoWayScore from_json(const nlohmann::json& j);
};

// Sample id -> one entry per tier, in tier order.
using ScoreTable = std::map<std::string, std::vector<TwoWayScore>>;

nlohmann::json to_json(const ScoreTable& scores);
ScoreTable score_table_from_json(const nlohmann::json& j);

// Validators must score on (0, 100); throws ConfigError otherwise.
void require_validator_scale(const judge::JudgeConfig& config);

// Combines per-direction verdicts for one output.
TwoWayScore combine(const judge::JudgeVerdict& forward, const judge::JudgeVerdict& backward);

// Scores every tier of `sample` in both directions.
std::vector<TwoWayScore> two_way_score(const judge::Judge& forward, const judge::Judge& backward,
                                       const core::HierarchySample& sample);

// Same for a whole dataset, with at most `limit` concurrent judge calls per
// direction.
ScoreTable score_dataset(const judge::Judge& forward, const judge::Judge& backward,
                         const core::HierarchyDataset& dataset, std::size_t limit);

struct Rejection {
  std::string sample_id;
  std::string reason;  // "unscored" or "order"
  std::string detail;
  // Violated adjacent tier pair (upper, lower); absent for unscored samples.
  std::optional<std::pair<int, int>> pair;
};

struct FilterReport {
  std::vector<std::string> retained;
  std::vector<Rejection> rejected;

  std::size_t total() const { return retained.size() + rejected.size(); }
  nlohmann::json to_json() const;
};

struct FilterResult {
  core::HierarchyDataset dataset;
  FilterReport report;
};

// Keeps the samples whose averages never increase from one tier to the next.
FilterResult filter_hierarchy(const core::HierarchyDataset& dataset, const ScoreTable& scores);

struct TierGap {
  int upper = 1;
  int lower = 2;
  double mean = 0.0;  // mean of average(upper) - average(lower)
};

struct GapReport {
  std::size_t samples = 0;
  std::vector<TierGap> gaps;  // pairs (1,2), (2,3), ...

  nlohmann::json to_json() const;
  static GapReport from_json(const nlohmann::json& j);
};

// Throws InvalidArgument on an empty dataset or a sample without scores.
GapReport gap_metrics(const core::HierarchyDataset& filtered, const ScoreTable& scores);

// Element-wise candidate <= reference over gaps of the same shape.
bool is_more_refined(const GapReport& candidate, const GapReport& reference);

}  // namespace tierbench::validate
