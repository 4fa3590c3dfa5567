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


// Pipeline stages as subcommands. Each stage reads and writes plain files in
// a phase directory.

#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tierbench/cli/run_config.hpp"
#include "tierbench/judge/judge.hpp"
#include "tierbench/util/error.hpp"

namespace tierbench::cli {

inline constexpr const char* kDatasetFile = "dataset.jsonl";
inline constexpr const char* kBuildLogFile = "build_log.json";
inline constexpr const char* kScoresFile = "scores.json";
inline constexpr const char* kFilteredFile = "filtered.jsonl";
inline constexpr const char* kFilterReportFile = "filter_report.json";
inline constexpr const char* kGapReportFile = "gap_report.json";
inline constexpr const char* kReportsFile = "reports.json";
inline constexpr const char* kVerdictsFile = "verdicts.jsonl";
inline constexpr const char* kCycleStateFile = "cycle_state.json";
inline constexpr const char* kAlignmentCsvFile = "alignment.csv";
inline constexpr const char* kReportTextFile = "report.txt";
inline constexpr const char* kReportSvgFile = "alignment.svg";
inline constexpr const char* kRunLogFile = "run.log";

// A stage ran but could not produce a usable result (exit code 1).
class StageError : public Error {
 public:
  using Error::Error;
};

struct CommandOptions {
  std::string phase_dir;  // overrides the configured output directory
  std::string dataset;    // input dataset for validate and test
  std::optional<std::size_t> top_m;
  bool resume = false;
};

// Appends timestamped lines to run.log and plain lines to `err`.
class PhaseLog {
 public:
  PhaseLog(const std::string& dir, std::ostream& err);
  void info(std::string_view message);

 private:
  std::ofstream file_;
  std::ostream& err_;
};

class Session {
 public:
  Session(RunConfig config, CommandOptions options, std::ostream& out, std::ostream& err);

  const std::string& dir() const { return dir_; }

  void build();
  void validate();
  void test();
  // build, validate, test and report; failures name the stage.
  void cycle();

 private:
  std::string path(const char* file) const;
  bool reusable(std::initializer_list<const char*> files) const;
  std::vector<judge::JudgeConfig> phase_candidates();

  RunConfig config_;
  CommandOptions options_;
  std::ostream& out_;
  std::ostream& err_;
  std::string dir_;
  PhaseLog log_;
  BackendSet backends_;
};

// Renders report.txt and alignment.svg for a finished phase directory and
// prints the text table. Throws StageError naming a missing artifact.
void write_report(const std::string& phase_dir, std::ostream& out);

// Hex digest identifying a dataset's exact serialized content.
std::string benchmark_id(const core::HierarchyDataset& dataset);

}  // namespace tierbench::cli
