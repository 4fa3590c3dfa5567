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

#pragma once

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace tierbench::judge {

struct Scale {
  double min = 1.0;
  double max = 7.0;

  double midpoint() const { return (min + max) / 2.0; }
  bool contains(double v) const { return v >= min && v <= max; }
  double clamp(double v) const { return v < min ? min : (v > max ? max : v); }

  bool operator==(const Scale&) const = default;
};

// Rule name that selects a scan for the last number in the text instead of
// a regular expression.
inline constexpr std::string_view kLastNumberRule = "last-number";

struct CompiledRule {
  std::string pattern;
  std::regex regex;
  bool last_number = false;
};

// Ordered rules: case-insensitive patterns with one numeric capture group
// for "Overall Accuracy Score: N", "Score: N" and "N/7", then kLastNumberRule.
const std::vector<std::string>& default_rules();

// Throws ConfigError on an invalid pattern or one without a capture group.
std::vector<CompiledRule> compile_rules(const std::vector<std::string>& patterns);

struct Extraction {
  std::optional<double> score;
  std::string failure;  // empty on success
};

// The first rule that matches decides; its capture must parse as a number
// inside the scale, otherwise the result is a range failure.
Extraction extract_score(std::string_view raw, const std::vector<CompiledRule>& rules,
                         const Scale& scale);
Extraction extract_score(std::string_view raw, const std::vector<std::string>& rules,
                         const Scale& scale);

}  // namespace tierbench::judge
