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


#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tierbench/cli/commands.hpp"
#include "tierbench/cli/run_config.hpp"
#include "tierbench/util/error.hpp"

namespace {

constexpr int kExitStageFailure = 1;
constexpr int kExitConfigError = 2;

struct Flags {
  std::string config;
  std::string dataset;
  std::string phase_dir;
  std::optional<std::size_t> top_m;
  std::optional<std::uint64_t> seed;
  bool resume = false;
};

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "Run configuration (JSON)")->required();
  cmd->add_option("--phase-dir", flags.phase_dir, "Phase directory (overrides output_dir)");
  cmd->add_option("--seed", flags.seed, "Run seed (overrides the configured seed)");
  cmd->add_flag("--resume", flags.resume, "Reuse artifacts of completed stages");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, validate and test hierarchy benchmarks for LLM judges"};
  app.require_subcommand(1);
  Flags flags;

  auto* build = app.add_subcommand("build", "Build the unfiltered hierarchy dataset");
  add_common(build, flags);
  auto* validate = app.add_subcommand("validate", "Two-way validate and filter a dataset");
  add_common(validate, flags);
  validate->add_option("--dataset", flags.dataset, "Dataset to validate");
  auto* test = app.add_subcommand("test", "Score candidate judges on a filtered benchmark");
  add_common(test, flags);
  test->add_option("--dataset", flags.dataset, "Filtered benchmark");
  test->add_option("--top-m", flags.top_m, "Number of survivors")->check(CLI::PositiveNumber);
  auto* cycle = app.add_subcommand("cycle", "Run build, validate, test and report");
  add_common(cycle, flags);
  cycle->add_option("--top-m", flags.top_m, "Number of survivors")->check(CLI::PositiveNumber);
  auto* report = app.add_subcommand("report", "Summarize a finished phase directory");
  report->add_option("--phase-dir", flags.phase_dir, "Phase directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  using namespace tierbench;
  try {
    if (report->parsed()) {
      cli::write_report(flags.phase_dir, std::cout);
      return 0;
    }
    auto config = cli::RunConfig::load(flags.config, flags.seed);
    cli::CommandOptions options;
    options.phase_dir = flags.phase_dir;
    options.dataset = flags.dataset;
    options.top_m = flags.top_m;
    options.resume = flags.resume;
    cli::Session session(std::move(config), std::move(options), std::cout, std::cerr);
    if (build->parsed()) session.build();
    if (validate->parsed()) session.validate();
    if (test->parsed()) session.test();
    if (cycle->parsed()) session.cycle();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStageFailure;
  }
}
