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


#include "tierbench/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <set>
#include <sstream>

#include "tierbench/cli/report.hpp"
#include "tierbench/core/serialization.hpp"
#include "tierbench/degrade/hierarchy_builder.hpp"
#include "tierbench/tester/alignment.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/util/resources.hpp"
#include "tierbench/util/text.hpp"
#include "tierbench/validate/two_way.hpp"

namespace tierbench::cli {
namespace {

namespace fs = std::filesystem;

std::string resolve_dir(const RunConfig& config, const CommandOptions& options) {
  const auto& dir = options.phase_dir.empty() ? config.output_dir : options.phase_dir;
  if (dir.empty()) throw ConfigError("no phase directory: set output_dir or pass --phase-dir");
  fs::create_directories(dir);
  return dir;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  util::write_file(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(util::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw StageError(path + " is not valid JSON: " + e.what());
  }
}

core::HierarchyDataset load_dataset(const std::string& path) {
  if (!fs::exists(path)) throw StageError("dataset " + path + " does not exist");
  try {
    return core::read_dataset(path);
  } catch (const ParseError& e) {
    throw StageError(std::string("cannot read dataset: ") + e.what());
  }
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

PhaseLog::PhaseLog(const std::string& dir, std::ostream& err)
    : file_((fs::path(dir) / kRunLogFile).string(), std::ios::app), err_(err) {}

void PhaseLog::info(std::string_view message) {
  err_ << message << '\n';
  if (file_) file_ << timestamp() << ' ' << message << '\n' << std::flush;
}

std::string benchmark_id(const core::HierarchyDataset& dataset) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(util::stable_hash(core::serialize_dataset(dataset))));
  return buf;
}

Session::Session(RunConfig config, CommandOptions options, std::ostream& out, std::ostream& err)
    : config_(std::move(config)),
      options_(std::move(options)),
      out_(out),
      err_(err),
      dir_(resolve_dir(config_, options_)),
      log_(dir_, err_),
      backends_(config_) {}

std::string Session::path(const char* file) const { return (fs::path(dir_) / file).string(); }

bool Session::reusable(std::initializer_list<const char*> files) const {
  if (!options_.resume) return false;
  for (const auto* f : files) {
    if (!fs::exists(path(f))) return false;
  }
  return true;
}

void Session::build() {
  if (reusable({kDatasetFile, kBuildLogFile})) {
    log_.info("build: reusing " + path(kDatasetFile));
    return;
  }
  std::vector<core::TaskInput> inputs;
  try {
    std::istringstream in(util::load_text(config_.inputs));
    inputs = core::parse_inputs(in);
  } catch (const Error& e) {
    throw ConfigError("inputs " + config_.inputs + ": " + e.what());
  }
  if (config_.max_inputs > 0 && inputs.size() > config_.max_inputs) {
    inputs.resize(config_.max_inputs);
  }
  for (const auto& in : inputs) {
    if (in.kind != config_.task) {
      throw ConfigError("input " + in.id + " is " + std::string(core::to_string(in.kind)) +
                        ", expected " + std::string(core::to_string(config_.task)));
    }
  }

  degrade::BuildOptions options;
  options.phase = "phase-" + std::to_string(config_.phase);
  options.seed = config_.seed;
  options.concurrency = config_.concurrency;
  options.log = [this](std::string_view line) { log_.info(std::string("build: ") + std::string(line)); };
  const auto result = degrade::build_hierarchy(inputs, config_.generation, config_.plan,
                                               backends_.generation(), options);
  core::write_dataset(result.dataset, path(kDatasetFile));
  write_json(path(kBuildLogFile), result.log_json());
  out_ << "built " << result.dataset.samples.size() << " of " << inputs.size() << " samples ("
       << result.dropped.size() << " dropped)\n";
  if (result.dataset.samples.empty()) throw StageError("build produced no samples");
}

void Session::validate() {
  if (reusable({kScoresFile, kFilteredFile, kFilterReportFile, kGapReportFile})) {
    log_.info("validate: reusing " + path(kFilteredFile));
    return;
  }
  const auto source = options_.dataset.empty() ? path(kDatasetFile) : options_.dataset;
  const auto dataset = load_dataset(source);
  if (dataset.samples.empty()) throw StageError("dataset " + source + " is empty");
  const auto violations = core::validate_dataset(dataset);
  if (!violations.empty()) {
    throw StageError("dataset " + source + " is malformed: " + violations.front().to_string());
  }

  const judge::Judge forward(config_.forward, backends_.client_for(config_.forward));
  const judge::Judge backward(config_.backward, backends_.client_for(config_.backward));
  const auto scores = validate::score_dataset(forward, backward, dataset, config_.concurrency);
  const auto filtered = validate::filter_hierarchy(dataset, scores);
  write_json(path(kScoresFile), validate::to_json(scores));
  core::write_dataset(filtered.dataset, path(kFilteredFile));
  write_json(path(kFilterReportFile), filtered.report.to_json());
  for (const auto& r : filtered.report.rejected) {
    log_.info("validate: rejected " + r.sample_id + " (" + r.reason + ": " + r.detail + ")");
  }
  out_ << "retained " << filtered.report.retained.size() << " of " << filtered.report.total()
       << " samples\n";
  if (filtered.dataset.samples.empty()) throw StageError("no samples retained");
  const auto gaps = validate::gap_metrics(filtered.dataset, scores);
  write_json(path(kGapReportFile), gaps.to_json());
  for (const auto& g : gaps.gaps) {
    out_ << "gap " << g.upper << "->" << g.lower << " = " << util::format_double(g.mean) << '\n';
  }
}

std::vector<judge::JudgeConfig> Session::phase_candidates() {
  if (config_.survivors.empty()) {
    if (config_.candidates.empty()) throw ConfigError("no candidate judges configured");
    return config_.candidates;
  }
  if (!fs::exists(config_.survivors)) {
    log_.info("warning: survivors file " + config_.survivors + " not found; using all " +
              std::to_string(config_.candidates.size()) + " configured candidates");
    if (config_.candidates.empty()) throw ConfigError("no candidate judges configured");
    return config_.candidates;
  }
  const auto previous = tester::CycleState::from_json(read_json(config_.survivors));
  const std::set<std::string> survivors(previous.survivors.begin(), previous.survivors.end());
  std::vector<judge::JudgeConfig> selected;
  if (config_.candidates.empty()) {
    selected = previous.surviving_configs();
    // Oracle qualities describe the benchmark levels, so they follow the
    // current phase.
    if (!config_.synthetic_qualities.empty()) {
      for (auto& c : selected) {
        if (c.backend == judge::JudgeBackend::kOracle ||
            c.backend == judge::JudgeBackend::kReversed) {
          c.oracle.qualities = config_.synthetic_qualities;
        }
      }
    }
  } else {
    for (const auto& c : config_.candidates) {
      if (survivors.contains(c.id) || survivors.contains(c.derived_from)) selected.push_back(c);
    }
  }
  if (selected.empty()) {
    throw ConfigError("no configured candidate matches the survivors in " + config_.survivors);
  }
  log_.info("test: " + std::to_string(selected.size()) + " candidates from survivors of phase " +
            std::to_string(previous.phase));
  return selected;
}

void Session::test() {
  if (reusable({kReportsFile, kCycleStateFile, kAlignmentCsvFile, kVerdictsFile})) {
    log_.info("test: reusing " + path(kCycleStateFile));
    return;
  }
  const auto candidates = phase_candidates();
  const auto source = options_.dataset.empty() ? path(kFilteredFile) : options_.dataset;
  const auto benchmark = load_dataset(source);
  if (benchmark.samples.empty()) throw StageError("benchmark " + source + " is empty");

  tester::PhaseOptions options;
  options.phase = config_.phase;
  options.benchmark_id = benchmark_id(benchmark);
  options.top_m = options_.top_m.value_or(config_.top_m);
  options.concurrency = config_.concurrency;
  options.client_for = [this](const judge::JudgeConfig& c) { return backends_.client_for(c); };
  const auto result = tester::run_phase(benchmark, candidates, options);

  auto reports = nlohmann::json::array();
  for (const auto& r : result.state.reports) reports.push_back(r.to_json());
  write_json(path(kReportsFile), reports);
  write_json(path(kCycleStateFile), result.state.to_json());
  util::write_file(path(kAlignmentCsvFile), tester::alignment_csv(result.state.reports));
  std::string verdicts;
  for (const auto& per_judge : result.verdicts) {
    for (const auto& v : per_judge) verdicts += v.to_json().dump() + "\n";
  }
  util::write_file(path(kVerdictsFile), verdicts);

  for (const auto& w : result.state.warnings) log_.info("warning: " + w);
  out_ << "survivors:";
  for (const auto& s : result.state.survivors) out_ << ' ' << s;
  out_ << '\n';
}

void Session::cycle() {
  auto stage = [&](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(name) + ": " + e.what());
    } catch (const Error& e) {
      throw StageError(std::string(name) + ": " + e.what());
    }
  };
  // The dataset flag names an input for one stage; a cycle makes its own.
  options_.dataset.clear();
  stage("build", [&] { build(); });
  stage("validate", [&] { validate(); });
  stage("test", [&] { test(); });
  stage("report", [&] { write_report(dir_, out_); });
}

void write_report(const std::string& phase_dir, std::ostream& out) {
  const auto at = [&](const char* f) { return (fs::path(phase_dir) / f).string(); };
  for (const auto* f : {kCycleStateFile, kFilterReportFile, kGapReportFile}) {
    if (!fs::exists(at(f))) throw StageError("phase directory is missing " + std::string(f));
  }
  const auto state = tester::CycleState::from_json(read_json(at(kCycleStateFile)));
  const auto filter = read_json(at(kFilterReportFile));
  const auto gaps = validate::GapReport::from_json(read_json(at(kGapReportFile)));
  RetentionSummary retention;
  try {
    retention = {filter.at("retained_count").get<std::size_t>(),
                 filter.at("total").get<std::size_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw StageError(std::string("malformed filter report: ") + e.what());
  }
  const auto text = render_text_report(state, retention, gaps);
  util::write_file(at(kReportTextFile), text);
  util::write_file(at(kReportSvgFile), render_svg(state.reports));
  out << text;
}

}  // namespace tierbench::cli
