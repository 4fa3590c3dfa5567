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


#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/validate/two_way.hpp"

namespace tierbench::validate {
namespace {

using testing::make_dataset;
using testing::oracle_config;
using testing::set_averages;
using testing::verdict;

TEST(Combine, AveragesBothDirections) {
  const auto s = combine(verdict("f", "a", 1, 80.0), verdict("b", "a", 1, 60.0));
  ASSERT_TRUE(s.scored());
  EXPECT_EQ(*s.average, 70.0);
  EXPECT_TRUE(s.failure.empty());
}

TEST(Combine, OneFailedDirectionLeavesTheOutputUnscored) {
  const auto s = combine(verdict("f", "a", 2, 80.0), verdict("b", "a", 2, std::nullopt));
  EXPECT_FALSE(s.scored());
  EXPECT_EQ(*s.forward, 80.0);
  EXPECT_TRUE(s.failure.starts_with("backward: "));
}

TEST(Scale, ValidatorsMustUseZeroToHundred) {
  EXPECT_NO_THROW(require_validator_scale(oracle_config("v", {90, 70}, 0)));
  EXPECT_THROW(require_validator_scale(oracle_config("v", {6, 4}, 0, 1, {1, 7})), ConfigError);
}

TEST(Filter, KeepsNonIncreasingAndRejectsAtFirstInversion) {
  const auto d = make_dataset(4, 3);
  ScoreTable t;
  set_averages(t, "s0", {80, 70, 60});
  set_averages(t, "s1", {60, 70, 50});
  set_averages(t, "s2", {80, 70, 75});
  set_averages(t, "s3", {70, 70, 60});
  const auto r = filter_hierarchy(d, t);
  EXPECT_EQ(r.report.retained, (std::vector<std::string>{"s0", "s3"}));
  ASSERT_EQ(r.report.rejected.size(), 2u);
  EXPECT_EQ(r.report.rejected[0].sample_id, "s1");
  EXPECT_EQ(r.report.rejected[0].reason, "order");
  EXPECT_EQ(*r.report.rejected[0].pair, std::make_pair(1, 2));
  EXPECT_EQ(*r.report.rejected[1].pair, std::make_pair(2, 3));
  EXPECT_EQ(r.dataset.samples.size(), 2u);
  EXPECT_EQ(r.report.total(), 4u);
}

TEST(Filter, UnscoredSamplesAreRejected) {
  const auto d = make_dataset(2, 2);
  ScoreTable t;
  set_averages(t, "s0", {80, 70});
  set_averages(t, "s1", {80, 70});
  t["s1"][1].average.reset();
  t["s1"][1].failure = "backward: request failed";
  const auto r = filter_hierarchy(d, t);
  ASSERT_EQ(r.report.rejected.size(), 1u);
  EXPECT_EQ(r.report.rejected[0].reason, "unscored");
  EXPECT_FALSE(r.report.rejected[0].pair);
}

TEST(Gaps, MeanDifferencePerAdjacentPair) {
  const auto d = make_dataset(2, 3);
  ScoreTable t;
  set_averages(t, "s0", {90, 80, 60});
  set_averages(t, "s1", {70, 60, 50});
  const auto g = gap_metrics(d, t);
  EXPECT_EQ(g.samples, 2u);
  ASSERT_EQ(g.gaps.size(), 2u);
  EXPECT_EQ(g.gaps[0].mean, 10.0);
  EXPECT_EQ(g.gaps[1].mean, 15.0);
  EXPECT_EQ(g.gaps[1].upper, 2);
  EXPECT_EQ(g.gaps[1].lower, 3);
  const auto back = GapReport::from_json(g.to_json());
  EXPECT_EQ(back.gaps[1].mean, 15.0);
}

TEST(Gaps, RefinementIsElementWise) {
  GapReport a{10, {{1, 2, 10}, {2, 3, 15}}};
  GapReport b{10, {{1, 2, 5}, {2, 3, 15}}};
  GapReport c{10, {{1, 2, 5}, {2, 3, 20}}};
  EXPECT_TRUE(is_more_refined(b, a));
  EXPECT_FALSE(is_more_refined(a, b));
  EXPECT_FALSE(is_more_refined(c, a));
}

TEST(Gaps, EmptyOrUnscoredInputThrows) {
  ScoreTable t;
  EXPECT_THROW(gap_metrics(make_dataset(0, 3), t), InvalidArgument);
  EXPECT_THROW(gap_metrics(make_dataset(1, 3), t), InvalidArgument);
}

ScoreTable random_table(const core::HierarchyDataset& d, util::Rng& rng) {
  ScoreTable t;
  for (const auto& s : d.samples) {
    std::vector<double> avg;
    for (int i = 0; i < d.k; ++i) avg.push_back(static_cast<double>(rng.below(101)));
    set_averages(t, s.input.id, avg);
  }
  return t;
}

TEST(FilterProperties, IdempotentAndGapsNonNegative) {
  util::Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(4));
    const auto d = make_dataset(1 + rng.below(30), k);
    const auto t = random_table(d, rng);
    const auto once = filter_hierarchy(d, t);
    const auto twice = filter_hierarchy(once.dataset, t);
    ASSERT_EQ(twice.dataset, once.dataset);
    ASSERT_TRUE(twice.report.rejected.empty());
    ASSERT_EQ(once.report.total(), d.samples.size());
    if (once.dataset.samples.empty()) continue;
    for (const auto& g : gap_metrics(once.dataset, t).gaps) ASSERT_GE(g.mean, 0.0);
  }
}

TEST(ScoreDataset, NoiselessOraclesRetainEverything) {
  const judge::Judge fwd(oracle_config("f", {90, 70, 50}, 0));
  const judge::Judge bwd(oracle_config("b", {80, 60, 40}, 0));
  const auto d = make_dataset(5, 3);
  const auto t = score_dataset(fwd, bwd, d, 3);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(*t.at("s2")[1].average, 65.0);
  EXPECT_EQ(filter_hierarchy(d, t).report.retained.size(), 5u);
  const auto round = score_table_from_json(to_json(t));
  EXPECT_EQ(*round.at("s4")[2].average, 45.0);
}

}  // namespace
}  // namespace tierbench::validate
