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

// Domain data model shared by every pipeline stage: task inputs, tiered
// outputs and the hierarchy datasets built from them.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tierbench::core {

enum class TaskKind { kCodeTranslation, kCodeSummarization, kNlToCode };

std::string_view to_string(TaskKind kind);
TaskKind parse_task_kind(std::string_view text);

struct TaskInput {
  std::string id;
  TaskKind kind = TaskKind::kCodeSummarization;
  // Source code or natural-language instruction.
  std::string content;
  // Translation mappings, or the reference artifact for nl-to-code inputs.
  std::optional<std::string> aux;

  bool operator==(const TaskInput&) const = default;
};

enum class MutationOperator {
  kKeywordTypo,
  kOperatorFlip,
  kDropEndStatement,
  kDropPerformTarget,
  kRenameOccurrence,
};

std::string_view to_string(MutationOperator op);
MutationOperator parse_mutation_operator(std::string_view text);

// One injected defect. `line`/`column` (1-based, byte columns) point into the
// text the mutation pass was applied to; records of the same `pass` share one
// pre-mutation text.
struct MutationRecord {
  MutationOperator op = MutationOperator::kKeywordTypo;
  int line = 1;
  int column = 1;
  std::string before;
  std::string after;
  int pass = 1;
  // Set on records produced by the fallback injection pass that replaces
  // renaming when the text has no names.
  bool fallback = false;

  bool operator==(const MutationRecord&) const = default;
};

enum class ProvenanceKind { kBaseline, kReducedCapacity, kDeqrease, kInjection };

std::string_view to_string(ProvenanceKind kind);
ProvenanceKind parse_provenance_kind(std::string_view text);

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::kBaseline;
  // Degradation depth that produced the content (1 = undegraded). This is the
  // latent quality level assigned at construction time and stays attached to
  // the content even if it is moved to another tier slot.
  int level = 1;
  std::string model;
  // Strategy parameters, e.g. DeQrease settings. Always a JSON object.
  nlohmann::json params = nlohmann::json::object();
  std::vector<MutationRecord> mutations;
  // Present when generation failed; the content may then be empty.
  std::optional<std::string> failure;

  bool operator==(const Provenance&) const = default;
};

struct TierOutput {
  int tier = 1;  // 1 = best
  std::string content;
  Provenance provenance;

  bool operator==(const TierOutput&) const = default;
};

struct HierarchySample {
  TaskInput input;
  std::vector<TierOutput> outputs;  // one per tier, sorted by tier

  bool operator==(const HierarchySample&) const = default;
};

struct HierarchyDataset {
  TaskKind kind = TaskKind::kCodeSummarization;
  int k = 3;
  std::string phase;
  std::vector<HierarchySample> samples;

  bool operator==(const HierarchyDataset&) const = default;
};

struct Violation {
  std::string sample_id;
  std::string rule;
  std::string detail;

  std::string to_string() const;
};

// Checks every dataset invariant. Returns an empty list iff the dataset is
// well formed; each violation names the offending sample and rule. At most one
// tier-structure violation is reported per sample (duplicate tier, then
// inconsistent k, then tier gap, then ordering).
std::vector<Violation> validate_dataset(const HierarchyDataset& dataset);

// Returns the output for `tier`, or nullptr.
const TierOutput* find_tier(const HierarchySample& sample, int tier);

}  // namespace tierbench::core
