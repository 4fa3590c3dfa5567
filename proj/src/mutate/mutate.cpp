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

#include "tierbench/mutate/mutate.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "tierbench/core/serialization.hpp"
#include "tierbench/util/error.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::mutate {
namespace {

constexpr std::string_view kRenameSuffix = "-X";

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool is_name(const CobolToken& t) {
  return t.kind == CobolTokenKind::kIdentifier || t.kind == CobolTokenKind::kParagraphName;
}

struct Site {
  MutationOperator op;
  std::size_t token;
};

std::size_t previous_significant(const std::vector<CobolToken>& tokens, std::size_t index) {
  for (std::size_t j = index; j-- > 0;) {
    if (tokens[j].kind != CobolTokenKind::kWhitespace) return j;
  }
  return tokens.size();
}

// The replacement text for `op` at `tokens[index]`, or nullopt if it does not apply.
std::optional<std::string> apply_operator(MutationOperator op, const std::vector<CobolToken>& tokens,
                                          std::size_t index) {
  const auto& t = tokens[index];
  switch (op) {
    case MutationOperator::kKeywordTypo: {
      if (t.kind != CobolTokenKind::kKeyword) return std::nullopt;
      auto typo = keyword_typo(t.text);
      if (typo.empty()) return std::nullopt;
      return typo;
    }
    case MutationOperator::kOperatorFlip: {
      if (t.kind != CobolTokenKind::kOperator) return std::nullopt;
      const auto flipped = flipped_operator(t.text);
      if (flipped.empty()) return std::nullopt;
      return std::string(flipped);
    }
    case MutationOperator::kDropEndStatement:
      if (t.kind != CobolTokenKind::kKeyword || !util::to_upper(t.text).starts_with("END-")) {
        return std::nullopt;
      }
      return std::string();
    case MutationOperator::kDropPerformTarget: {
      if (!is_name(t)) return std::nullopt;
      const auto prev = previous_significant(tokens, index);
      if (prev == tokens.size() || tokens[prev].kind != CobolTokenKind::kKeyword ||
          util::to_upper(tokens[prev].text) != "PERFORM") {
        return std::nullopt;
      }
      return std::string();
    }
    case MutationOperator::kRenameOccurrence:
      break;
  }
  return std::nullopt;
}

void check_catalog(std::span<const MutationOperator> catalog) {
  if (catalog.empty()) throw InvalidArgument("mutation catalog is empty");
  for (auto op : catalog) {
    if (op == MutationOperator::kRenameOccurrence) {
      throw InvalidArgument("rename-occurrence is not an injection operator");
    }
  }
}

std::vector<Site> collect_sites(const std::vector<CobolToken>& tokens,
                                std::span<const MutationOperator> catalog) {
  std::vector<Site> sites;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (auto op : catalog) {
      if (apply_operator(op, tokens, i)) sites.push_back({op, i});
    }
  }
  return sites;
}

MutationRecord make_record(MutationOperator op, const CobolToken& t, std::string after) {
  MutationRecord r;
  r.op = op;
  r.line = t.line;
  r.column = t.column;
  r.before = t.text;
  r.after = std::move(after);
  return r;
}

std::vector<std::size_t> line_starts(std::string_view text) {
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') starts.push_back(i + 1);
  }
  return starts;
}

}  // namespace

std::string keyword_typo(std::string_view word) {
  const std::size_t n = word.size();
  if (n < 4) return {};
  // Interior pairs only, starting from (n-3, n-2) and moving left.
  for (std::size_t i = n - 3; i >= 1; --i) {
    if (is_alpha(word[i]) && is_alpha(word[i + 1]) && word[i] != word[i + 1]) {
      std::string out(word);
      std::swap(out[i], out[i + 1]);
      return out;
    }
  }
  return {};
}

std::string_view flipped_operator(std::string_view op) {
  if (op == "=") return "<>";
  if (op == "<>") return "=";
  if (op == "<") return ">";
  if (op == ">") return "<";
  if (op == "<=") return ">=";
  if (op == ">=") return "<=";
  return {};
}

std::size_t count_injection_sites(std::string_view source,
                                  std::span<const MutationOperator> catalog) {
  check_catalog(catalog);
  const auto tokens = scan(source);
  std::set<std::size_t> distinct;
  for (const auto& s : collect_sites(tokens, catalog)) distinct.insert(s.token);
  return distinct.size();
}

MutationResult inject_errors(std::string_view source, int count,
                             std::span<const MutationOperator> catalog, std::uint64_t seed) {
  if (count < 1) throw InvalidArgument("injection count must be >= 1");
  check_catalog(catalog);
  const auto tokens = scan(source);
  auto sites = collect_sites(tokens, catalog);

  std::set<std::size_t> distinct;
  for (const auto& s : sites) distinct.insert(s.token);
  if (distinct.size() < static_cast<std::size_t>(count)) {
    throw InvalidArgument("only " + std::to_string(distinct.size()) +
                          " applicable mutation sites, " + std::to_string(count) + " requested");
  }

  util::Rng rng(seed);
  util::shuffle(sites, rng);
  std::set<std::size_t> used;
  MutationResult result;
  for (const auto& s : sites) {
    if (result.records.size() == static_cast<std::size_t>(count)) break;
    if (!used.insert(s.token).second) continue;
    result.records.push_back(
        make_record(s.op, tokens[s.token], *apply_operator(s.op, tokens, s.token)));
  }
  std::sort(result.records.begin(), result.records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.line, a.column) < std::tie(b.line, b.column);
  });
  result.text = apply_mutations(source, result.records);
  return result;
}

MutationResult rename_names(std::string_view source, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("rename fraction must lie in (0, 1]");
  }
  const auto tokens = scan(source);
  std::map<std::string, std::vector<std::size_t>> occurrences;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_name(tokens[i])) occurrences[util::to_upper(tokens[i].text)].push_back(i);
  }
  if (occurrences.empty()) throw InvalidArgument("no names to rename");

  std::vector<std::string> names;
  for (const auto& [name, _] : occurrences) names.push_back(name);
  const std::size_t chosen =
      std::max<std::size_t>(1, util::ceil_fraction(fraction, names.size()));

  util::Rng rng(seed);
  util::shuffle(names, rng);
  MutationResult result;
  for (std::size_t n = 0; n < chosen; ++n) {
    auto sites = occurrences[names[n]];
    std::size_t rewrite = 1;
    if (sites.size() > 1) {
      rewrite = 1 + static_cast<std::size_t>(rng.below(sites.size() - 1));
      util::shuffle(sites, rng);
    }
    for (std::size_t i = 0; i < rewrite; ++i) {
      const auto& t = tokens[sites[i]];
      result.records.push_back(make_record(MutationOperator::kRenameOccurrence, t,
                                           t.text + std::string(kRenameSuffix)));
    }
  }
  std::sort(result.records.begin(), result.records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.line, a.column) < std::tie(b.line, b.column);
  });
  result.text = apply_mutations(source, result.records);
  return result;
}

std::string apply_mutations(std::string_view source, std::span<const MutationRecord> records) {
  const auto starts = line_starts(source);
  struct Edit {
    std::size_t offset;
    const MutationRecord* record;
  };
  std::vector<Edit> edits;
  for (const auto& r : records) {
    if (r.line < 1 || static_cast<std::size_t>(r.line) > starts.size() || r.column < 1) {
      throw InvalidArgument("mutation location out of range");
    }
    const std::size_t offset = starts[r.line - 1] + static_cast<std::size_t>(r.column - 1);
    if (source.substr(offset, r.before.size()) != r.before) {
      throw InvalidArgument("mutation at " + std::to_string(r.line) + ":" +
                            std::to_string(r.column) + " does not match '" + r.before + "'");
    }
    edits.push_back({offset, &r});
  }
  std::sort(edits.begin(), edits.end(),
            [](const Edit& a, const Edit& b) { return a.offset < b.offset; });

  std::string out;
  std::size_t pos = 0;
  for (const auto& e : edits) {
    if (e.offset < pos) throw InvalidArgument("overlapping mutations");
    out.append(source.substr(pos, e.offset - pos));
    out += e.record->after;
    pos = e.offset + e.record->before.size();
  }
  out.append(source.substr(pos));
  return out;
}

std::string replay_mutations(std::string_view source, std::span<const MutationRecord> records) {
  std::map<int, std::vector<MutationRecord>> by_pass;
  for (const auto& r : records) by_pass[r.pass].push_back(r);
  std::string text(source);
  for (const auto& [pass, group] : by_pass) text = apply_mutations(text, group);
  return text;
}

DegradedLevels degrade_levels(std::string_view source, std::uint64_t seed) {
  DegradedLevels out;
  auto first = inject_errors(source, 2, kInjectionCatalog, util::mix_seed(seed, 1));
  out.level1 = std::move(first.text);
  out.level1_records = std::move(first.records);

  const auto tokens = scan(out.level1);
  const bool has_names = std::any_of(tokens.begin(), tokens.end(), is_name);
  MutationResult second;
  if (has_names) {
    second = rename_names(out.level1, 0.5, util::mix_seed(seed, 2));
  } else {
    second = inject_errors(out.level1, 1, kInjectionCatalog, util::mix_seed(seed, 3));
    for (auto& r : second.records) r.fallback = true;
  }
  for (auto& r : second.records) r.pass = 2;
  out.level2 = std::move(second.text);
  out.level2_records = out.level1_records;
  out.level2_records.insert(out.level2_records.end(), second.records.begin(),
                            second.records.end());
  return out;
}

std::string records_to_jsonl(std::span<const MutationRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += core::to_json(r).dump();
    out += '\n';
  }
  return out;
}

}  // namespace tierbench::mutate
