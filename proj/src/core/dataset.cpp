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

#include <algorithm>
#include <array>
#include <set>
#include <utility>

#include "tierbench/core/types.hpp"
#include "tierbench/util/error.hpp"

namespace tierbench::core {
namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<std::pair<Enum, std::string_view>, N>& table,
                std::string_view what) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  throw ParseError("unknown " + std::string(what) + ": '" + std::string(text) + "'");
}

template <typename Enum, std::size_t N>
std::string_view enum_name(Enum value, const std::array<std::pair<Enum, std::string_view>, N>& table) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "unknown";
}

constexpr std::array<std::pair<TaskKind, std::string_view>, 3> kTaskKinds{{
    {TaskKind::kCodeTranslation, "code-translation"},
    {TaskKind::kCodeSummarization, "code-summarization"},
    {TaskKind::kNlToCode, "nl-to-code"},
}};

constexpr std::array<std::pair<MutationOperator, std::string_view>, 5> kOperators{{
    {MutationOperator::kKeywordTypo, "keyword-typo"},
    {MutationOperator::kOperatorFlip, "operator-flip"},
    {MutationOperator::kDropEndStatement, "drop-end-statement"},
    {MutationOperator::kDropPerformTarget, "drop-perform-target"},
    {MutationOperator::kRenameOccurrence, "rename-occurrence"},
}};

constexpr std::array<std::pair<ProvenanceKind, std::string_view>, 4> kProvenance{{
    {ProvenanceKind::kBaseline, "baseline"},
    {ProvenanceKind::kReducedCapacity, "reduced-capacity"},
    {ProvenanceKind::kDeqrease, "deqrease"},
    {ProvenanceKind::kInjection, "injection"},
}};

}  // namespace

std::string_view to_string(TaskKind kind) { return enum_name(kind, kTaskKinds); }
TaskKind parse_task_kind(std::string_view text) { return parse_enum(text, kTaskKinds, "task kind"); }

std::string_view to_string(MutationOperator op) { return enum_name(op, kOperators); }
MutationOperator parse_mutation_operator(std::string_view text) {
  return parse_enum(text, kOperators, "mutation operator");
}

std::string_view to_string(ProvenanceKind kind) { return enum_name(kind, kProvenance); }
ProvenanceKind parse_provenance_kind(std::string_view text) {
  return parse_enum(text, kProvenance, "provenance");
}

std::string Violation::to_string() const {
  std::string out = "sample '" + sample_id + "': " + rule;
  if (!detail.empty()) out += " (" + detail + ")";
  return out;
}

const TierOutput* find_tier(const HierarchySample& sample, int tier) {
  for (const auto& out : sample.outputs) {
    if (out.tier == tier) return &out;
  }
  return nullptr;
}

std::vector<Violation> validate_dataset(const HierarchyDataset& dataset) {
  std::vector<Violation> violations;
  if (dataset.samples.empty()) {
    violations.push_back({"", "no samples", ""});
  }
  if (dataset.k < 1) {
    violations.push_back({"", "invalid k", "k=" + std::to_string(dataset.k)});
  }

  std::set<std::string> seen_ids;
  for (const auto& sample : dataset.samples) {
    const auto& id = sample.input.id;
    if (id.empty()) violations.push_back({id, "empty id", ""});
    if (!seen_ids.insert(id).second) violations.push_back({id, "duplicate id", ""});
    if (sample.input.content.empty()) violations.push_back({id, "empty content", ""});
    if (sample.input.kind != dataset.kind) {
      violations.push_back({id, "inconsistent kind", std::string(to_string(sample.input.kind))});
    }

    std::vector<int> tiers;
    for (const auto& out : sample.outputs) {
      tiers.push_back(out.tier);
      if (out.tier < 1) {
        violations.push_back({id, "invalid tier", "tier=" + std::to_string(out.tier)});
      }
      if (out.content.empty() && !out.provenance.failure) {
        violations.push_back({id, "empty output", "tier=" + std::to_string(out.tier)});
      }
    }

    std::vector<int> sorted = tiers;
    std::sort(sorted.begin(), sorted.end());
    const bool has_duplicate = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    if (has_duplicate) {
      violations.push_back({id, "duplicate tier", ""});
    } else if (static_cast<int>(sorted.size()) != dataset.k) {
      violations.push_back({id, "inconsistent k",
                            std::to_string(sorted.size()) + " tiers, dataset k=" +
                                std::to_string(dataset.k)});
    } else if (!sorted.empty() && (sorted.front() != 1 || sorted.back() != dataset.k)) {
      violations.push_back({id, "tier gap", "tiers must be exactly 1..k"});
    } else if (sorted != tiers) {
      violations.push_back({id, "unsorted tiers", ""});
    }
  }
  return violations;
}

}  // namespace tierbench::core
