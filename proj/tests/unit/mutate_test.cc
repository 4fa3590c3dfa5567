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
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "tierbench/mutate/cobol_scanner.hpp"
#include "tierbench/mutate/mutate.hpp"
#include "tierbench/util/error.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/util/resources.hpp"

namespace tierbench::mutate {
namespace {

using K = CobolTokenKind;

std::vector<CobolToken> significant(std::string_view source) {
  std::vector<CobolToken> out;
  for (auto& t : scan(source)) {
    if (t.kind != K::kWhitespace) out.push_back(t);
  }
  return out;
}

std::string fixture(const std::string& name) { return std::string(util::resource("cobol/" + name)); }

TEST(Scanner, PerformStatement) {
  const auto t = significant("PERFORM PARA-1.");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].kind, K::kKeyword);
  EXPECT_EQ(t[0].text, "PERFORM");
  EXPECT_EQ(t[1].kind, K::kIdentifier);
  EXPECT_EQ(t[1].text, "PARA-1");
  EXPECT_EQ(t[1].column, 9);
  EXPECT_EQ(t[2].kind, K::kPunctuation);
}

TEST(Scanner, ComparisonOperator) {
  const auto t = significant("IF A <> B");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].kind, K::kKeyword);
  EXPECT_EQ(t[1].kind, K::kIdentifier);
  EXPECT_EQ(t[2].kind, K::kOperator);
  EXPECT_EQ(t[2].text, "<>");
  EXPECT_EQ(t[3].kind, K::kIdentifier);
}

TEST(Scanner, ParagraphNamesCommentsAndPictures) {
  const auto t = significant("       MAIN-PARA.\n           *> note here\n       01 WS-X PIC 9(5)V99.\n");
  ASSERT_GE(t.size(), 3u);
  EXPECT_EQ(t[0].kind, K::kParagraphName);
  EXPECT_EQ(t[2].kind, K::kComment);
  EXPECT_EQ(t[2].text, "*> note here");
  const auto pic = std::find_if(t.begin(), t.end(), [](const auto& x) { return x.text == "9(5)V99"; });
  ASSERT_NE(pic, t.end());
  EXPECT_EQ(pic->kind, K::kLiteral);
  EXPECT_EQ(pic->line, 3);
}

TEST(Scanner, IsLosslessOnShippedPrograms) {
  for (const char* name : {"payroll.cbl", "inventory.cbl", "keyword_typo.cbl", "operator_flip.cbl"}) {
    const auto src = fixture(name);
    std::string joined;
    for (const auto& t : scan(src)) joined += t.text;
    EXPECT_EQ(joined, src) << name;
  }
}

TEST(Scanner, IsLosslessOnRandomText) {
  const std::string alphabet = "ABCXYZ-09 .=<>()'\"*\n\t";
  util::Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::string src;
    const auto len = rng.below(80);
    for (std::uint64_t i = 0; i < len; ++i) src += alphabet[rng.below(alphabet.size())];
    std::string joined;
    std::size_t expected_offset = 0;
    for (const auto& t : scan(src)) {
      ASSERT_EQ(t.offset, expected_offset);
      expected_offset += t.text.size();
      joined += t.text;
    }
    ASSERT_EQ(joined, src) << src;
  }
}

TEST(KeywordTypo, SwapsAnInteriorPair) {
  EXPECT_EQ(keyword_typo("PERFORM"), "PERFROM");
  EXPECT_EQ(keyword_typo("DISPLAY"), "DISPALY");
  EXPECT_EQ(keyword_typo("IF"), "");
  EXPECT_EQ(keyword_typo("RUN"), "");
}

TEST(OperatorFlip, Pairs) {
  EXPECT_EQ(flipped_operator("="), "<>");
  EXPECT_EQ(flipped_operator("<>"), "=");
  EXPECT_EQ(flipped_operator("<"), ">");
  EXPECT_EQ(flipped_operator(">="), "<=");
  EXPECT_EQ(flipped_operator("+"), "");
}

struct GoldenCase {
  const char* stem;
  MutationOperator op;
};

class Goldens : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Goldens, SingleOperatorMatchesGolden) {
  const auto& c = GetParam();
  const auto src = fixture(std::string(c.stem) + ".cbl");
  const MutationOperator catalog[] = {c.op};
  ASSERT_EQ(count_injection_sites(src, catalog), 1u);
  const auto r = inject_errors(src, 1, catalog, 11);
  EXPECT_EQ(r.text, fixture(std::string(c.stem) + ".golden"));
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].op, c.op);
  EXPECT_EQ(apply_mutations(src, r.records), r.text);
}

INSTANTIATE_TEST_SUITE_P(
    Operators, Goldens,
    ::testing::Values(GoldenCase{"keyword_typo", MutationOperator::kKeywordTypo},
                      GoldenCase{"operator_flip", MutationOperator::kOperatorFlip},
                      GoldenCase{"drop_end_statement", MutationOperator::kDropEndStatement},
                      GoldenCase{"drop_perform_target", MutationOperator::kDropPerformTarget}),
    [](const auto& info) { return std::string(info.param.stem); });

TEST(Inject, ExactCountAtDistinctTokensAndReplayable) {
  const auto src = fixture("payroll.cbl");
  const auto sites = count_injection_sites(src);
  ASSERT_GE(sites, 5u);
  util::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const int count = 1 + static_cast<int>(rng.below(5));
    const auto seed = rng.next_u64();
    const auto r = inject_errors(src, count, kInjectionCatalog, seed);
    ASSERT_EQ(r.records.size(), static_cast<std::size_t>(count));
    std::set<std::pair<int, int>> at;
    for (const auto& rec : r.records) {
      ASSERT_TRUE(at.insert({rec.line, rec.column}).second);
      ASSERT_NE(rec.before, rec.after);
    }
    ASSERT_EQ(replay_mutations(src, r.records), r.text);
    ASSERT_NE(r.text, src);
    ASSERT_EQ(inject_errors(src, count, kInjectionCatalog, seed).text, r.text);
  }
}

TEST(Inject, RejectsImpossibleRequests) {
  const auto src = fixture("keyword_typo.cbl");
  EXPECT_THROW(inject_errors(src, 0, kInjectionCatalog, 1), InvalidArgument);
  EXPECT_THROW(inject_errors(src, 50, kInjectionCatalog, 1), InvalidArgument);
  const MutationOperator rename[] = {MutationOperator::kRenameOccurrence};
  EXPECT_THROW(inject_errors(src, 1, rename, 1), InvalidArgument);
  EXPECT_THROW(inject_errors(src, 1, std::span<const MutationOperator>{}, 1), InvalidArgument);
}

TEST(Apply, RejectsMismatchAndOverlap) {
  MutationRecord r;
  r.line = 1;
  r.column = 1;
  r.before = "MOVE";
  r.after = "MVOE";
  EXPECT_THROW(apply_mutations("DISPLAY X", std::vector{r}), InvalidArgument);
  MutationRecord a = r, b = r;
  a.before = "DISPLAY";
  b.before = "DISP";
  EXPECT_THROW(apply_mutations("DISPLAY X", std::vector{a, b}), InvalidArgument);
}

std::size_t count_renamed_names(const MutationResult& r) {
  std::set<std::string> names;
  for (const auto& rec : r.records) names.insert(rec.before);
  return names.size();
}

TEST(Rename, HalfOfFourNamesIsTwo) {
  const std::string src = "MOVE ALPHA TO BETA\nMOVE GAMMA TO DELTA\nMOVE ALPHA TO DELTA\n";
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto r = rename_names(src, 0.5, seed);
    EXPECT_EQ(count_renamed_names(r), 2u);
    for (const auto& rec : r.records) {
      EXPECT_EQ(rec.op, MutationOperator::kRenameOccurrence);
      EXPECT_EQ(rec.after, rec.before + "-X");
    }
  }
}

TEST(Rename, SingleOccurrenceIsRewritten) {
  const auto r = rename_names("DISPLAY ONLY-NAME", 1.0, 3);
  EXPECT_EQ(r.text, "DISPLAY ONLY-NAME-X");
}

TEST(Rename, ProperSubsetOfOccurrences) {
  const std::string src = "MOVE 1 TO WS-TOTAL\nADD 2 TO WS-TOTAL\nDISPLAY WS-TOTAL\n";
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto r = rename_names(src, 1.0, seed);
    ASSERT_GE(r.records.size(), 1u);
    ASSERT_LE(r.records.size(), 2u);
    ASSERT_EQ(replay_mutations(src, r.records), r.text);
  }
  EXPECT_THROW(rename_names("STOP RUN.", 0.5, 1), InvalidArgument);
  EXPECT_THROW(rename_names(src, 0.0, 1), InvalidArgument);
}

TEST(DegradeLevels, TwoInjectionsThenRenaming) {
  const auto src = fixture("payroll.cbl");
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto d = degrade_levels(src, seed);
    ASSERT_EQ(d.level1_records.size(), 2u);
    ASSERT_GE(d.level2_records.size(), 3u);
    ASSERT_TRUE(std::equal(d.level1_records.begin(), d.level1_records.end(),
                           d.level2_records.begin()));
    ASSERT_NE(d.level1, src);
    ASSERT_NE(d.level2, d.level1);
    ASSERT_EQ(replay_mutations(src, d.level1_records), d.level1);
    ASSERT_EQ(replay_mutations(src, d.level2_records), d.level2);
    const auto again = degrade_levels(src, seed);
    ASSERT_EQ(again.level2, d.level2);
  }
}

TEST(DegradeLevels, FallsBackToInjectionWithoutNames) {
  const std::string src = "IF 1 = 2 OR 3 < 4 OR 5 > 6";
  const auto d = degrade_levels(src, 4);
  ASSERT_EQ(d.level2_records.size(), 3u);
  EXPECT_TRUE(d.level2_records.back().fallback);
  EXPECT_EQ(d.level2_records.back().pass, 2);
  EXPECT_EQ(d.level2_records.back().op, MutationOperator::kOperatorFlip);
  EXPECT_EQ(replay_mutations(src, d.level2_records), d.level2);
}

TEST(Records, JsonlHasOneLinePerRecord) {
  const auto r = inject_errors(fixture("payroll.cbl"), 3, kInjectionCatalog, 1);
  const auto text = records_to_jsonl(r.records);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

}  // namespace
}  // namespace tierbench::mutate
