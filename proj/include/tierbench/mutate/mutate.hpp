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

// Seeded, rule-based defect injection for COBOL source. Every edit is
// recorded as a MutationRecord so that a mutant can be re-derived from its
// source and audited.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tierbench/core/types.hpp"
#include "tierbench/mutate/cobol_scanner.hpp"

namespace tierbench::mutate {

using core::MutationOperator;
using core::MutationRecord;

// Operators usable by inject_errors (renaming has its own entry point).
inline constexpr MutationOperator kInjectionCatalog[] = {
    MutationOperator::kKeywordTypo,
    MutationOperator::kOperatorFlip,
    MutationOperator::kDropEndStatement,
    MutationOperator::kDropPerformTarget,
};

struct MutationResult {
  std::string text;
  std::vector<MutationRecord> records;  // ordered by position
};

// Swaps two adjacent interior letters: PERFORM -> PERFROM, DISPLAY -> DISPALY.
// Returns an empty string when the word has no swappable pair.
std::string keyword_typo(std::string_view word);

// = <-> <>, < <-> >, <= <-> >=. Empty for any other operator.
std::string_view flipped_operator(std::string_view op);

// Number of distinct tokens at which at least one catalog operator applies.
std::size_t count_injection_sites(std::string_view source,
                                  std::span<const MutationOperator> catalog = kInjectionCatalog);

// Applies `count` defects at distinct tokens chosen uniformly (seeded) among
// all applicable (operator, token) sites. Throws InvalidArgument when the
// source has fewer than `count` applicable tokens, when count < 1, or when
// the catalog is empty or contains rename-occurrence.
MutationResult inject_errors(std::string_view source, int count,
                             std::span<const MutationOperator> catalog, std::uint64_t seed);

// Renames ceil(fraction * distinct names) names, chosen uniformly (seeded).
// Each chosen name has a random nonempty strict subset of its occurrences
// rewritten to "<name>-X" (a single-occurrence name is rewritten at its only
// site). Names are identifiers and paragraph names compared case-insensitively.
// Throws InvalidArgument when no names exist or fraction is outside (0, 1].
MutationResult rename_names(std::string_view source, double fraction, std::uint64_t seed);

// Applies records of a single pass to the text they were recorded against.
// Throws InvalidArgument when a record does not match the text or two
// records overlap.
std::string apply_mutations(std::string_view source, std::span<const MutationRecord> records);

// Applies records pass by pass (pass 1 to the source, pass 2 to the result).
std::string replay_mutations(std::string_view source, std::span<const MutationRecord> records);

struct DegradedLevels {
  std::string level1;
  std::string level2;
  std::vector<MutationRecord> level1_records;  // pass 1
  // Cumulative: level1_records followed by the pass-2 records.
  std::vector<MutationRecord> level2_records;
};

// level1 = inject_errors(source, 2); level2 = rename_names(level1, 0.5). When
// level1 has no names, level2 instead receives one more injection whose
// records carry fallback = true.
DegradedLevels degrade_levels(std::string_view source, std::uint64_t seed);

// One JSON object per record, newline separated.
std::string records_to_jsonl(std::span<const MutationRecord> records);

}  // namespace tierbench::mutate
