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


#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tierbench/cli/commands.hpp"
#include "tierbench/cli/report.hpp"
#include "tierbench/cli/run_config.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::cli {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

const std::string kConfigDir = std::string(TIERBENCH_SOURCE_DIR) + "/configs";

nlohmann::json phase1_json() {
  return nlohmann::json::parse(util::read_file(kConfigDir + "/synthetic_phase1.json"));
}

TEST(RunConfig, LoadsTheShippedPhaseOneConfig) {
  const auto c = RunConfig::load(kConfigDir + "/synthetic_phase1.json");
  EXPECT_EQ(c.task, core::TaskKind::kCodeSummarization);
  EXPECT_EQ(c.plan.strategy, degrade::Strategy::kDeqrease);
  ASSERT_EQ(c.plan.deqrease_tiers.size(), 2u);
  EXPECT_EQ(c.plan.deqrease_tiers[1].prefix_fraction, 0.4);
  EXPECT_EQ(c.candidates.size(), 6u);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(fs::path(c.output_dir).lexically_normal(),
            (fs::path(kConfigDir) / "../runs/phase1").lexically_normal());
  EXPECT_EQ(c.candidates[0].oracle.qualities, (std::vector<double>{90, 70, 50}));
  EXPECT_EQ(c.generation.prompt_template.find("{input}") != std::string::npos, true);
}

TEST(RunConfig, OracleSeedsDeriveFromRunSeedAndId) {
  const auto a = RunConfig::from_json(phase1_json(), kConfigDir);
  EXPECT_EQ(a.candidates[0].oracle.seed, util::mix_seed(7, util::stable_hash("oracle-sigma-02")));
  EXPECT_NE(a.candidates[0].oracle.seed, a.candidates[1].oracle.seed);
  const auto b = RunConfig::from_json(phase1_json(), kConfigDir, 8);
  EXPECT_EQ(b.seed, 8u);
  EXPECT_NE(b.candidates[0].oracle.seed, a.candidates[0].oracle.seed);

  auto j = phase1_json();
  j["candidates"][0]["oracle"]["seed"] = 5;
  EXPECT_EQ(RunConfig::from_json(j, kConfigDir).candidates[0].oracle.seed, 5u);
}

TEST(RunConfig, ValidationNamesTheProblem) {
  auto j = phase1_json();
  j["tier_plan"]["model"] = "absent";
  auto c = RunConfig::from_json(j, kConfigDir);
  try {
    c.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("absent"), std::string::npos);
  }

  j = phase1_json();
  j["candidates"][1]["id"] = "oracle-sigma-02";
  EXPECT_THROW(RunConfig::from_json(j, kConfigDir).validate(), ConfigError);

  j = phase1_json();
  j["validators"]["forward"]["scale"] = {1, 7};
  EXPECT_THROW(RunConfig::from_json(j, kConfigDir).validate(), ConfigError);
}

tester::AlignmentReport report(const std::string& id, double overall) {
  tester::AlignmentReport r;
  r.judge_id = id;
  r.overall = overall;
  r.usable = true;
  return r;
}

TEST(Report, SvgBarsAreProportionalToScores) {
  const auto svg = render_svg({report("a", 0.9), report("b<c", 0.5), report("d", 0.7)});
  std::regex rect(R"re(<rect [^>]*height="([0-9.]+)")re");
  std::vector<double> heights;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), rect); it != std::sregex_iterator(); ++it) {
    heights.push_back(std::stod((*it)[1]));
  }
  ASSERT_EQ(heights.size(), 3u);
  EXPECT_DOUBLE_EQ(heights[0], 0.9 * kBarScale);
  EXPECT_NEAR(heights[0] / heights[1], 9.0 / 5.0, 1e-9);
  EXPECT_NE(svg.find("b&lt;c"), std::string::npos);
}

TEST(Report, MissingArtifactIsAStageError) {
  TempDir dir("report");
  std::ostringstream out;
  try {
    write_report(dir.str(), out);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_NE(std::string(e.what()).find(kCycleStateFile), std::string::npos);
  }
}

RunConfig small_config(nlohmann::json j) {
  j["max_inputs"] = 6;
  return RunConfig::from_json(j, kConfigDir);
}

TEST(Session, CycleWritesEveryArtifact) {
  TempDir dir("cycle");
  std::ostringstream out, err;
  Session s(small_config(phase1_json()), {dir.str(), "", std::nullopt, false}, out, err);
  s.cycle();
  for (const char* f : {kDatasetFile, kBuildLogFile, kScoresFile, kFilteredFile, kFilterReportFile,
                        kGapReportFile, kReportsFile, kVerdictsFile, kCycleStateFile,
                        kAlignmentCsvFile, kReportTextFile, kReportSvgFile, kRunLogFile}) {
    EXPECT_TRUE(fs::exists(dir.file(f))) << f;
  }
  EXPECT_NE(out.str().find("built 6 of 6 samples"), std::string::npos);
  EXPECT_NE(out.str().find("survivors: oracle-sigma-02"), std::string::npos);
}

TEST(Session, MissingSurvivorsFileFallsBackWithAWarning) {
  TempDir dir("fallback");
  auto j = phase1_json();
  j["survivors"] = "does-not-exist/cycle_state.json";
  std::ostringstream out, err;
  Session s(small_config(j), {dir.str(), "", std::nullopt, false}, out, err);
  s.cycle();
  EXPECT_NE(err.str().find("warning: survivors file"), std::string::npos);
  EXPECT_NE(out.str().find("survivors:"), std::string::npos);
}

TEST(Session, SurvivorsNarrowTheNextPhase) {
  TempDir one("phase-one"), two("phase-two");
  std::ostringstream out, err;
  Session(small_config(phase1_json()), {one.str(), "", std::nullopt, false}, out, err).cycle();

  auto j = nlohmann::json::parse(util::read_file(kConfigDir + "/synthetic_phase2.json"));
  j["survivors"] = one.file(kCycleStateFile);
  std::ostringstream out2;
  Session(small_config(j), {two.str(), "", std::nullopt, false}, out2, err).cycle();
  const auto state =
      tester::CycleState::from_json(nlohmann::json::parse(util::read_file(two.file(kCycleStateFile))));
  EXPECT_EQ(state.phase, 2);
  ASSERT_EQ(state.candidates.size(), 3u);
  EXPECT_EQ(state.candidates[0].oracle.qualities, (std::vector<double>{90, 80, 70}));
}

TEST(Session, BenchmarkIdTracksContent) {
  auto d = testing::make_dataset(3, 3);
  const auto a = benchmark_id(d);
  EXPECT_EQ(a, benchmark_id(d));
  d.samples[0].outputs[0].content += "!";
  EXPECT_NE(a, benchmark_id(d));
}

}  // namespace
}  // namespace tierbench::cli
