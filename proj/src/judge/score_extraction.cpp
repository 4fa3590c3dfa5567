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

#include "tierbench/judge/score_extraction.hpp"

#include <charconv>

#include "tierbench/util/error.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::judge {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// The last "-?D+(.D+)?" in the text, or empty.
std::string last_number(std::string_view raw) {
  std::size_t end = raw.size();
  while (end > 0 && !is_digit(raw[end - 1])) --end;
  if (end == 0) return {};
  std::size_t begin = end;
  while (begin > 0 && is_digit(raw[begin - 1])) --begin;
  if (begin >= 2 && raw[begin - 1] == '.' && is_digit(raw[begin - 2])) {
    begin -= 1;
    while (begin > 0 && is_digit(raw[begin - 1])) --begin;
  }
  if (begin > 0 && raw[begin - 1] == '-') --begin;
  return std::string(raw.substr(begin, end - begin));
}

}  // namespace

const std::vector<std::string>& default_rules() {
  static const std::vector<std::string> kRules = {
      R"(overall accuracy score\s*:?\s*\[?\s*(-?\d+(?:\.\d+)?))",
      R"(score\s*:\s*\**\s*(-?\d+(?:\.\d+)?))",
      R"((-?\d+(?:\.\d+)?)\s*/\s*7(?![0-9]))",
      std::string(kLastNumberRule),
  };
  return kRules;
}

std::vector<CompiledRule> compile_rules(const std::vector<std::string>& patterns) {
  std::vector<CompiledRule> out;
  out.reserve(patterns.size());
  for (const auto& p : patterns) {
    if (p == kLastNumberRule) {
      out.push_back({p, std::regex(), true});
      continue;
    }
    try {
      std::regex re(p, std::regex::ECMAScript | std::regex::icase);
      if (re.mark_count() < 1) {
        throw ConfigError("extraction rule has no capture group: " + p);
      }
      out.push_back({p, std::move(re)});
    } catch (const std::regex_error& e) {
      throw ConfigError("invalid extraction rule '" + p + "': " + e.what());
    }
  }
  return out;
}

Extraction extract_score(std::string_view raw, const std::vector<CompiledRule>& rules,
                         const Scale& scale) {
  for (const auto& rule : rules) {
    std::string text;
    if (rule.last_number) {
      text = last_number(raw);
      if (text.empty()) continue;
    } else {
      std::match_results<std::string_view::const_iterator> m;
      if (!std::regex_search(raw.begin(), raw.end(), m, rule.regex)) continue;
      text = m.str(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      return {std::nullopt, "unparseable score '" + text + "'"};
    }
    if (!scale.contains(value)) {
      return {std::nullopt, "score " + util::format_double(value) + " outside scale [" +
                                util::format_double(scale.min) + ", " +
                                util::format_double(scale.max) + "]"};
    }
    return {value, ""};
  }
  return {std::nullopt, "no score found"};
}

Extraction extract_score(std::string_view raw, const std::vector<std::string>& rules,
                         const Scale& scale) {
  return extract_score(raw, compile_rules(rules.empty() ? default_rules() : rules), scale);
}

}  // namespace tierbench::judge
