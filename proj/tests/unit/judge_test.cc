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


#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tierbench/judge/judge.hpp"
#include "tierbench/judge/score_extraction.hpp"

namespace tierbench::judge {
namespace {

using testing::FakeChat;
using testing::make_dataset;
using testing::make_sample;
using testing::oracle_config;

TEST(Oracle, NoiselessScoreIsTheTierQuality) {
  const Judge j(oracle_config("o", {90, 70, 50}, 0.0));
  const auto s = make_sample("a", 3);
  const auto v = j.score(s.input, s.outputs[1]);
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(*v.score, 70.0);
  EXPECT_EQ(v.tier, 2);
}

TEST(Oracle, ConstantJudgeReturnsTheMidpoint) {
  JudgeConfig c;
  c.id = "c";
  c.backend = JudgeBackend::kConstant;
  c.scale = {1, 7};
  const Judge j(c);
  const auto s = make_sample("a", 3);
  for (const auto& o : s.outputs) EXPECT_EQ(*j.score(s.input, o).score, 4.0);
}

TEST(Oracle, ReversedJudgeInvertsQualities) {
  auto c = oracle_config("r", {90, 70, 50}, 0.0);
  c.backend = JudgeBackend::kReversed;
  const Judge j(c);
  const auto s = make_sample("a", 3);
  EXPECT_EQ(*j.score(s.input, s.outputs[0]).score, 50.0);
  EXPECT_EQ(*j.score(s.input, s.outputs[2]).score, 90.0);
}

TEST(Oracle, ScoresFollowTheLatentLevelNotTheSlot) {
  const Judge j(oracle_config("o", {90, 70, 50}, 0.0));
  auto s = make_sample("a", 3);
  std::swap(s.outputs[0].content, s.outputs[2].content);
  std::swap(s.outputs[0].provenance, s.outputs[2].provenance);
  EXPECT_EQ(*j.score(s.input, s.outputs[0]).score, 50.0);
}

TEST(Oracle, QuantizeAndClamp) {
  auto c = oracle_config("o", {98, 70}, 0.0, 1, {0, 95});
  c.oracle.quantization = 25;
  const Judge j(c);
  const auto s = make_sample("a", 2);
  EXPECT_EQ(*j.score(s.input, s.outputs[0]).score, 95.0);
  EXPECT_EQ(*j.score(s.input, s.outputs[1]).score, 75.0);
}

TEST(Oracle, AdjacentOrderingProbabilityMatchesNormalCdf) {
  // Difference of two independent N(0, sigma^2) draws has sd sigma*sqrt(2).
  const double sigma = 20.0, delta = 20.0;
  const double expected = 0.5 * std::erfc(-(delta / (sigma * std::sqrt(2.0))) / std::sqrt(2.0));
  const Judge j(oracle_config("o", {90, 70}, sigma, 123, {-1e6, 1e6}));
  const auto d = make_dataset(10000, 2, "cal");
  int ordered = 0;
  for (const auto& s : d.samples) {
    if (*j.score(s.input, s.outputs[0]).score > *j.score(s.input, s.outputs[1]).score) ++ordered;
  }
  EXPECT_NEAR(ordered / 10000.0, expected, 0.015);
}

TEST(Oracle, NoiseIsReproducible) {
  const Judge a(oracle_config("o", {90, 70, 50}, 10.0, 42));
  const Judge b(oracle_config("o", {90, 70, 50}, 10.0, 42));
  const auto s = make_sample("x", 3);
  for (const auto& o : s.outputs) EXPECT_EQ(a.score(s.input, o), b.score(s.input, o));
}

TEST(Extraction, DefaultRules) {
  const Scale seven{1, 7};
  EXPECT_EQ(*extract_score("Overall Accuracy Score: 6", default_rules(), seven).score, 6.0);
  EXPECT_EQ(*extract_score("The summary is fine.\nScore: 5", default_rules(), seven).score, 5.0);
  EXPECT_EQ(*extract_score("I would rate it 3/7 overall", default_rules(), seven).score, 3.0);
  EXPECT_EQ(*extract_score("some text then 2", default_rules(), seven).score, 2.0);
}

TEST(Extraction, FailuresCarryAReason) {
  const Scale seven{1, 7};
  const auto none = extract_score("no digits at all", default_rules(), seven);
  EXPECT_FALSE(none.score);
  EXPECT_EQ(none.failure, "no score found");
  const auto out = extract_score("Score: 9", default_rules(), seven);
  EXPECT_FALSE(out.score);
  EXPECT_NE(out.failure.find("outside scale"), std::string::npos);
}

TEST(Extraction, CustomRulesMustCapture) {
  EXPECT_THROW(compile_rules({"score"}), ConfigError);
  EXPECT_THROW(compile_rules({"("}), ConfigError);
  EXPECT_EQ(*extract_score("grade=4", std::vector<std::string>{R"(grade=(\d))"}, {1, 7}).score, 4.0);
}

TEST(Batch, OneVerdictPerSampleTierInOrder) {
  const Judge j(oracle_config("o", {90, 70, 50}, 5.0));
  const auto d = make_dataset(2, 3);
  const auto v = score_batch(j, d.samples, 4);
  ASSERT_EQ(v.size(), 6u);
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(v[i].sample_id, d.samples[i / 3].input.id);
    EXPECT_EQ(v[i].tier, static_cast<int>(i % 3) + 1);
  }
}

TEST(Batch, ConcurrencyDoesNotChangeResults) {
  const Judge j(oracle_config("o", {90, 70, 50}, 15.0, 8));
  const auto d = make_dataset(40, 3);
  EXPECT_EQ(score_batch(j, d.samples, 1), score_batch(j, d.samples, 8));
  EXPECT_THROW(score_batch(j, d.samples, 0), InvalidArgument);
}

JudgeConfig remote_config() {
  JudgeConfig c;
  c.id = "remote";
  c.backend = JudgeBackend::kRemote;
  c.scale = {1, 7};
  c.endpoint = "local";
  c.model = "judge-model";
  c.prompt_template = "Rate {output} for {input}";
  return c;
}

TEST(Remote, RendersPromptAndExtracts) {
  auto chat = std::make_shared<FakeChat>([](std::string_view model, std::string_view prompt) {
    EXPECT_EQ(model, "judge-model");
    EXPECT_EQ(prompt, "Rate a-t1 for input a");
    return std::string("Score: 6");
  });
  const Judge j(remote_config(), chat);
  const auto s = make_sample("a", 2);
  const auto v = j.score(s.input, s.outputs[0]);
  EXPECT_EQ(*v.score, 6.0);
  EXPECT_EQ(v.raw, "Score: 6");
}

TEST(Remote, EndpointDownYieldsFailedVerdicts) {
  auto chat = std::make_shared<FakeChat>(
      [](std::string_view, std::string_view) -> std::string { throw TransportError("refused"); });
  const Judge j(remote_config(), chat);
  const auto d = make_dataset(3, 2);
  const auto v = score_batch(j, d.samples, 2);
  ASSERT_EQ(v.size(), 6u);
  for (const auto& x : v) {
    EXPECT_FALSE(x.ok());
    ASSERT_TRUE(x.failure);
    EXPECT_NE(x.failure->find("request failed"), std::string::npos);
  }
}

TEST(Remote, PostProcessorRestatesTheScore) {
  auto chat = std::make_shared<FakeChat>([](std::string_view model, std::string_view) {
    return std::string(model == "judge-model" ? "It is quite good, I'd say five." : "5");
  });
  auto c = remote_config();
  c.post_processor_model = "extractor";
  const Judge j(c, chat);
  const auto s = make_sample("a", 1);
  const auto v = j.score(s.input, s.outputs[0]);
  EXPECT_EQ(*v.score, 5.0);
  EXPECT_EQ(chat->calls(), 2);
}

TEST(Remote, UnextractableReplyFails) {
  auto chat = std::make_shared<FakeChat>(
      [](std::string_view, std::string_view) { return std::string("excellent work"); });
  const Judge j(remote_config(), chat);
  const auto s = make_sample("a", 1);
  const auto v = j.score(s.input, s.outputs[0]);
  EXPECT_FALSE(v.ok());
  EXPECT_EQ(*v.failure, "extraction: no score found");
}

TEST(Config, ValidationRejectsBadSettings) {
  auto c = oracle_config("o", {50, 70}, 0.0);
  EXPECT_THROW(c.validate(), ConfigError);
  c = oracle_config("o", {90, 70}, -1.0);
  EXPECT_THROW(c.validate(), ConfigError);
  auto r = remote_config();
  r.prompt_template = "no placeholders";
  EXPECT_THROW(r.validate(), ConfigError);
  EXPECT_THROW(Judge{remote_config()}, ConfigError);
}

TEST(Config, JsonRoundTrip) {
  auto c = oracle_config("o", {90, 70, 50}, 3.5, 77);
  c.derived_from = "base";
  EXPECT_EQ(JudgeConfig::from_json(c.to_json()), c);
  const auto r = remote_config();
  EXPECT_EQ(JudgeConfig::from_json(r.to_json()), r);
  const auto v = testing::verdict("o", "s1", 2, std::nullopt);
  EXPECT_EQ(JudgeVerdict::from_json(v.to_json()), v);
}

}  // namespace
}  // namespace tierbench::judge
