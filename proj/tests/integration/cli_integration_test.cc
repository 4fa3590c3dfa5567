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


// Drives the tierbench executable end to end through its command line.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "test_support.hpp"
#include "tierbench/util/text.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using tierbench::testing::TempDir;

const std::string kConfigDir = std::string(TIERBENCH_SOURCE_DIR) + "/configs";

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(TIERBENCH_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json load_config(const std::string& name) {
  return json::parse(tierbench::util::read_file(kConfigDir + "/" + name));
}

// Writes `config` next to the shipped configs' expectations: relative paths
// inside it are rewritten by the caller.
std::string write_config(const TempDir& dir, const json& config, const std::string& name = "run.json") {
  const auto path = dir.file(name);
  tierbench::util::write_file(path, config.dump(2));
  return path;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

std::vector<std::string> lines_of(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

TEST(Cli, CycleSucceedsAndRerunsAreByteIdentical) {
  TempDir a("cli-a"), b("cli-b");
  const auto config = kConfigDir + "/synthetic_phase1.json";
  const auto ra = run_cli("cycle --config " + quoted(config) + " --phase-dir " + quoted(a.str()));
  ASSERT_EQ(ra.exit_code, 0) << ra.output;
  EXPECT_NE(ra.output.find("built 20 of 20 samples"), std::string::npos) << ra.output;
  const auto rb = run_cli("cycle --config " + quoted(config) + " --phase-dir " + quoted(b.str()));
  ASSERT_EQ(rb.exit_code, 0) << rb.output;

  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a.str())) {
    const auto name = entry.path().filename().string();
    if (name == "run.log") continue;
    EXPECT_EQ(tierbench::util::read_file(entry.path().string()),
              tierbench::util::read_file(b.file(name)))
        << name;
    ++compared;
  }
  EXPECT_GE(compared, 12u);
}

TEST(Cli, SeedOverrideChangesTheDataset) {
  TempDir a("seed-a"), b("seed-b");
  const auto config = quoted(kConfigDir + "/synthetic_phase1.json");
  ASSERT_EQ(run_cli("build --config " + config + " --phase-dir " + quoted(a.str())).exit_code, 0);
  ASSERT_EQ(run_cli("build --config " + config + " --seed 99 --phase-dir " + quoted(b.str())).exit_code, 0);
  EXPECT_NE(tierbench::util::read_file(a.file("dataset.jsonl")),
            tierbench::util::read_file(b.file("dataset.jsonl")));
}

TEST(Cli, UsageAndConfigurationErrorsExitTwo) {
  EXPECT_EQ(run_cli("cycle").exit_code, 2);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
  EXPECT_EQ(run_cli("build --config /nonexistent/config.json").exit_code, 2);
  EXPECT_EQ(run_cli("--help").exit_code, 0);

  TempDir dir("cli-config");
  auto config = load_config("synthetic_phase1.json");
  config["inputs"] = "builtin:synthetic/inputs.jsonl";
  config["tier_plan"]["model"] = "not-configured";
  const auto r = run_cli("build --config " + quoted(write_config(dir, config)) + " --phase-dir " +
                         quoted(dir.file("out")));
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("not-configured"), std::string::npos) << r.output;
}

TEST(Cli, ZeroCandidatesIsAConfigurationError) {
  TempDir dir("cli-zero");
  auto config = load_config("synthetic_phase1.json");
  config["candidates"] = json::array();
  const auto r = run_cli("cycle --config " + quoted(write_config(dir, config)) + " --phase-dir " +
                         quoted(dir.file("out")));
  EXPECT_EQ(r.exit_code, 2) << r.output;
}

TEST(Cli, UnreachableRemoteBackendFailsTheBuild) {
  TempDir dir("cli-remote");
  auto config = load_config("synthetic_phase1.json");
  config["endpoints"] = {{"dead",
                          {{"base_url", "http://127.0.0.1:9/v1"},
                           {"timeout_ms", 500},
                           {"max_attempts", 1},
                           {"initial_backoff_ms", 1}}}};
  config["models"]["mock"] = {{"backend", "remote"}, {"endpoint", "dead"}, {"model", "m"}};
  config["max_inputs"] = 3;
  const auto r = run_cli("build --config " + quoted(write_config(dir, config)) + " --phase-dir " +
                         quoted(dir.file("out")));
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("built 0 of 3 samples (3 dropped)"), std::string::npos) << r.output;
}

TEST(Cli, ShuffledTiersAreFilteredOut) {
  TempDir dir("cli-shuffle");
  const auto config = quoted(kConfigDir + "/synthetic_phase1.json");
  ASSERT_EQ(run_cli("build --config " + config + " --phase-dir " + quoted(dir.str())).exit_code, 0);

  // Swap the best and worst outputs of five samples, keeping tier slots.
  std::ostringstream shuffled;
  int changed = 0;
  for (const auto& line : lines_of(dir.file("dataset.jsonl"))) {
    auto j = json::parse(line);
    if (changed < 5) {
      auto& outs = j["outputs"];
      std::swap(outs[0]["content"], outs[2]["content"]);
      std::swap(outs[0]["provenance"], outs[2]["provenance"]);
      ++changed;
    }
    shuffled << j.dump() << '\n';
  }
  tierbench::util::write_file(dir.file("shuffled.jsonl"), shuffled.str());

  TempDir out("cli-shuffle-out");
  const auto r = run_cli("validate --config " + config + " --phase-dir " + quoted(out.str()) +
                         " --dataset " + quoted(dir.file("shuffled.jsonl")));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("retained 15 of 20 samples"), std::string::npos) << r.output;
  const auto report = json::parse(tierbench::util::read_file(out.file("filter_report.json")));
  ASSERT_EQ(report.at("rejected").size(), 5u);
  for (const auto& rej : report.at("rejected")) EXPECT_EQ(rej.at("reason"), "order");
}

TEST(Cli, EmptyDatasetIsAStageFailure) {
  TempDir dir("cli-empty");
  tierbench::util::write_file(dir.file("empty.jsonl"), "");
  const auto r = run_cli("validate --config " + quoted(kConfigDir + "/synthetic_phase1.json") +
                         " --phase-dir " + quoted(dir.file("out")) + " --dataset " +
                         quoted(dir.file("empty.jsonl")));
  EXPECT_EQ(r.exit_code, 1) << r.output;
}

TEST(Cli, TwelveCandidatesGiveTwelveCsvRows) {
  TempDir dir("cli-twelve");
  auto config = load_config("synthetic_phase1.json");
  config["candidates"] = json::array();
  for (int i = 0; i < 12; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "oracle-%02d", i);
    config["candidates"].push_back(
        {{"id", id}, {"backend", "oracle"}, {"scale", {0, 100}}, {"oracle", {{"sigma", 2 + 4 * i}}}});
  }
  const auto r = run_cli("cycle --config " + quoted(write_config(dir, config)) + " --phase-dir " +
                         quoted(dir.file("out")));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto rows = lines_of(dir.file("out/alignment.csv"));
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_TRUE(rows[0].starts_with("judge,usable,n_used,n_total,overall"));
  const auto state = json::parse(tierbench::util::read_file(dir.file("out/cycle_state.json")));
  EXPECT_EQ(state.at("survivors").size(), 3u);
}

TEST(Cli, SecondPhaseIsMoreRefined) {
  TempDir dir("cli-phases");
  auto p1 = load_config("synthetic_phase1.json");
  auto p2 = load_config("synthetic_phase2.json");
  p2["survivors"] = dir.file("phase1/cycle_state.json");
  const auto c1 = write_config(dir, p1, "p1.json");
  const auto c2 = write_config(dir, p2, "p2.json");
  ASSERT_EQ(run_cli("cycle --config " + quoted(c1) + " --phase-dir " + quoted(dir.file("phase1"))).exit_code, 0);
  const auto r2 = run_cli("cycle --config " + quoted(c2) + " --phase-dir " + quoted(dir.file("phase2")));
  ASSERT_EQ(r2.exit_code, 0) << r2.output;

  const auto g1 = json::parse(tierbench::util::read_file(dir.file("phase1/gap_report.json")));
  const auto g2 = json::parse(tierbench::util::read_file(dir.file("phase2/gap_report.json")));
  ASSERT_EQ(g1.at("gaps").size(), g2.at("gaps").size());
  for (std::size_t i = 0; i < g1.at("gaps").size(); ++i) {
    EXPECT_LT(g2["gaps"][i]["mean"].get<double>(), g1["gaps"][i]["mean"].get<double>());
  }
  const auto state = json::parse(tierbench::util::read_file(dir.file("phase2/cycle_state.json")));
  EXPECT_EQ(state.at("phase"), 2);
  EXPECT_EQ(state.at("candidates").size(), 3u);
}

TEST(Cli, MissingSurvivorsFileWarnsAndUsesAllCandidates) {
  TempDir dir("cli-missing");
  auto config = load_config("synthetic_phase1.json");
  config["survivors"] = dir.file("nowhere/cycle_state.json");
  const auto r = run_cli("cycle --config " + quoted(write_config(dir, config)) + " --phase-dir " +
                         quoted(dir.file("out")));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("warning: survivors file"), std::string::npos) << r.output;
  const auto state = json::parse(tierbench::util::read_file(dir.file("out/cycle_state.json")));
  EXPECT_EQ(state.at("candidates").size(), 6u);
}

TEST(Cli, ReportNeedsAFinishedPhase) {
  TempDir dir("cli-report");
  const auto r = run_cli("report --phase-dir " + quoted(dir.str()));
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("cycle_state.json"), std::string::npos) << r.output;
}

TEST(Cli, ResumeReusesFinishedStages) {
  TempDir dir("cli-resume");
  const auto config = quoted(kConfigDir + "/synthetic_phase1.json");
  ASSERT_EQ(run_cli("cycle --config " + config + " --phase-dir " + quoted(dir.str())).exit_code, 0);
  const auto before = tierbench::util::read_file(dir.file("cycle_state.json"));
  const auto r = run_cli("cycle --resume --seed 123 --config " + config + " --phase-dir " + quoted(dir.str()));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("build: reusing"), std::string::npos) << r.output;
  EXPECT_EQ(tierbench::util::read_file(dir.file("cycle_state.json")), before);

  const auto report = run_cli("report --phase-dir " + quoted(dir.str()));
  EXPECT_EQ(report.exit_code, 0) << report.output;
  EXPECT_NE(report.output.find("oracle-sigma-02"), std::string::npos);
}

}  // namespace
