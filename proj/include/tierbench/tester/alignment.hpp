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


// Strict pairwise ordering alignment of judge scores against tier order,
// ranking of judge configurations and refinement-cycle state.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tierbench/core/types.hpp"
#include "tierbench/judge/judge.hpp"

namespace tierbench::tester {

// Fraction of tier pairs u < v with scores[u] > scores[v]; ties count as
// misses. Throws InvalidArgument for fewer than two scores.
double sample_alignment(std::span<const double> scores);

struct Exclusion {
  std::string sample_id;
  std::string reason;
};

struct PairAccuracy {
  int upper = 1;
  int lower = 2;
  double accuracy = 0.0;  // share of used samples with score(upper) > score(lower)
};

struct AlignmentReport {
  std::string judge_id;
  std::size_t n_total = 0;
  std::size_t n_used = 0;
  bool usable = false;  // false when no sample had complete verdicts
  double overall = 0.0;
  std::vector<std::pair<std::string, double>> per_sample;
  std::vector<PairAccuracy> pairs;
  std::vector<Exclusion> excluded;

  nlohmann::json to_json() const;
  static AlignmentReport from_json(const nlohmann::json& j);
};

// Samples with any failed or missing verdict are excluded and counted.
// Throws InvalidArgument("no usable samples") when nothing is left.
AlignmentReport alignment_score(const std::string& judge_id,
                                const core::HierarchyDataset& dataset,
                                const std::vector<judge::JudgeVerdict>& verdicts);

// Report for a judge that could not be scored on any sample.
AlignmentReport unusable_report(const std::string& judge_id,
                                const core::HierarchyDataset& dataset,
                                const std::vector<judge::JudgeVerdict>& verdicts);

struct Selection {
  std::vector<std::string> survivors;
  std::vector<std::string> warnings;
};

// Top `top_m` usable reports by overall score, ties by judge id ascending.
// Unusable reports never survive.
Selection rank_and_select(const std::vector<AlignmentReport>& reports, std::size_t top_m);

// Reports sorted the way rank_and_select ranks them.
std::vector<AlignmentReport> ranked(std::vector<AlignmentReport> reports);

struct CycleState {
  int phase = 1;
  std::string benchmark_id;
  std::vector<judge::JudgeConfig> candidates;
  std::vector<AlignmentReport> reports;  // candidate order
  std::vector<std::string> survivors;    // rank order
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  static CycleState from_json(const nlohmann::json& j);

  // Candidate configurations whose id is among the survivors, in rank order.
  std::vector<judge::JudgeConfig> surviving_configs() const;
};

struct PhaseOptions {
  int phase = 1;
  std::string benchmark_id;
  std::size_t top_m = 3;
  std::size_t concurrency = 1;
  // Client for each remote candidate; may be empty when all are synthetic.
  std::function<std::shared_ptr<const util::ChatClient>(const judge::JudgeConfig&)> client_for;
};

struct PhaseResult {
  CycleState state;
  std::vector<std::vector<judge::JudgeVerdict>> verdicts;  // per candidate
};

// Scores every candidate on every output and selects survivors. Throws
// InvalidArgument when there are no candidates or top_m is 0.
PhaseResult run_phase(const core::HierarchyDataset& benchmark,
                      const std::vector<judge::JudgeConfig>& candidates,
                      const PhaseOptions& options);

// judge,usable,n_used,n_total,overall,acc_1_2,... one row per report.
std::string alignment_csv(const std::vector<AlignmentReport>& reports);

}  // namespace tierbench::tester
