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


// Human-readable phase summaries: a plain-text table and an SVG bar chart.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tierbench/tester/alignment.hpp"
#include "tierbench/validate/two_way.hpp"

namespace tierbench::cli {

struct RetentionSummary {
  std::size_t retained = 0;
  std::size_t total = 0;
};

std::string render_text_report(const tester::CycleState& state, const RetentionSummary& retention,
                                const validate::GapReport& gaps);

// One bar per report, in the given order, height proportional to the overall
// score (unusable reports get an empty bar labeled n/a).
std::string render_svg(const std::vector<tester::AlignmentReport>& reports);

// Bar height in pixels for a score in [0, 1].
inline constexpr double kBarScale = 200.0;

}  // namespace tierbench::cli
