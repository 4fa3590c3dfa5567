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


#include "tierbench/tester/alignment.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tierbench/util/error.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::tester {
namespace {

struct PairCount {
  std::size_t strictly_ordered = 0;
  std::size_t pairs = 0;
};

PairCount count_ordered(std::span<const double> scores) {
  PairCount c;
  for (std::size_t u = 0; u < scores.size(); ++u) {
    for (std::size_t v = u + 1; v < scores.size(); ++v) {
      ++c.pairs;
      if (scores[u] > scores[v]) ++c.strictly_ordered;
    }
  }
  return c;
}

using VerdictIndex = std::map<std::pair<std::string, int>, const judge::JudgeVerdict*>;

VerdictIndex index_verdicts(const std::vector<judge::JudgeVerdict>& verdicts) {
  VerdictIndex index;
  for (const auto& v : verdicts) index[{v.sample_id, v.tier}] = &v;
  return index;
}

bool better(const AlignmentReport& a, const AlignmentReport& b) {
  if (a.usable != b.usable) return a.usable;
  if (a.overall != b.overall) return a.overall > b.overall;
  return a.judge_id < b.judge_id;
}

}  // namespace

double sample_alignment(std::span<const double> scores) {
  if (scores.size() < 2) throw InvalidArgument("alignment needs at least two tiers");
  const auto c = count_ordered(scores);
  return static_cast<double>(c.strictly_ordered) / static_cast<double>(c.pairs);
}

AlignmentReport alignment_score(const std::string& judge_id,
                                const core::HierarchyDataset& dataset,
                                const std::vector<judge::JudgeVerdict>& verdicts) {
  const auto index = index_verdicts(verdicts);
  AlignmentReport report;
  report.judge_id = judge_id;
  report.n_total = dataset.samples.size();

  if (dataset.k < 2) throw InvalidArgument("alignment needs k >= 2");
  const auto k = static_cast<std::size_t>(dataset.k);
  std::vector<std::vector<std::size_t>> wins(k, std::vector<std::size_t>(k, 0));
  std::size_t ordered_total = 0;
  std::size_t pairs_total = 0;

  for (const auto& sample : dataset.samples) {
    std::vector<double> scores;
    std::string reason;
    for (const auto& out : sample.outputs) {
      auto it = index.find({sample.input.id, out.tier});
      if (it == index.end()) {
        reason = "tier " + std::to_string(out.tier) + ": no verdict";
        break;
      }
      if (!it->second->ok()) {
        reason = "tier " + std::to_string(out.tier) + ": " +
                 it->second->failure.value_or("no score");
        break;
      }
      scores.push_back(*it->second->score);
    }
    if (reason.empty() && scores.size() != k) reason = "tier count differs from k";
    if (!reason.empty()) {
      report.excluded.push_back({sample.input.id, reason});
      continue;
    }
    const auto c = count_ordered(scores);
    ordered_total += c.strictly_ordered;
    pairs_total += c.pairs;
    report.per_sample.emplace_back(sample.input.id, static_cast<double>(c.strictly_ordered) /
                                                        static_cast<double>(c.pairs));
    for (std::size_t u = 0; u < k; ++u) {
      for (std::size_t v = u + 1; v < k; ++v) {
        if (scores[u] > scores[v]) ++wins[u][v];
      }
    }
  }

  report.n_used = report.per_sample.size();
  if (report.n_used == 0) throw InvalidArgument("no usable samples");
  report.usable = true;
  // Every used sample has the same pair count, so this is the mean of the
  // per-sample values computed from integers.
  report.overall = static_cast<double>(ordered_total) / static_cast<double>(pairs_total);
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < k; ++v) {
      report.pairs.push_back({static_cast<int>(u + 1), static_cast<int>(v + 1),
                              static_cast<double>(wins[u][v]) /
                                  static_cast<double>(report.n_used)});
    }
  }
  return report;
}

AlignmentReport unusable_report(const std::string& judge_id,
                                const core::HierarchyDataset& dataset,
                                const std::vector<judge::JudgeVerdict>& verdicts) {
  AlignmentReport report;
  report.judge_id = judge_id;
  report.n_total = dataset.samples.size();
  const auto index = index_verdicts(verdicts);
  for (const auto& sample : dataset.samples) {
    std::string reason = "no verdict";
    for (const auto& out : sample.outputs) {
      auto it = index.find({sample.input.id, out.tier});
      if (it != index.end() && !it->second->ok()) {
        reason = "tier " + std::to_string(out.tier) + ": " +
                 it->second->failure.value_or("no score");
        break;
      }
    }
    report.excluded.push_back({sample.input.id, reason});
  }
  return report;
}

nlohmann::json AlignmentReport::to_json() const {
  auto samples = nlohmann::json::array();
  for (const auto& [id, alpha] : per_sample) samples.push_back({{"id", id}, {"alpha", alpha}});
  auto pairs_json = nlohmann::json::array();
  for (const auto& p : pairs) {
    pairs_json.push_back({{"upper", p.upper}, {"lower", p.lower}, {"accuracy", p.accuracy}});
  }
  auto excluded_json = nlohmann::json::array();
  for (const auto& e : excluded) excluded_json.push_back({{"id", e.sample_id}, {"reason", e.reason}});
  return {{"judge", judge_id},     {"usable", usable},       {"overall", overall},
          {"n_total", n_total},    {"n_used", n_used},       {"pairs", pairs_json},
          {"samples", samples},    {"excluded", excluded_json}};
}

AlignmentReport AlignmentReport::from_json(const nlohmann::json& j) {
  try {
    AlignmentReport r;
    r.judge_id = j.at("judge").get<std::string>();
    r.usable = j.at("usable").get<bool>();
    r.overall = j.at("overall").get<double>();
    r.n_total = j.at("n_total").get<std::size_t>();
    r.n_used = j.at("n_used").get<std::size_t>();
    for (const auto& p : j.at("pairs")) {
      r.pairs.push_back(
          {p.at("upper").get<int>(), p.at("lower").get<int>(), p.at("accuracy").get<double>()});
    }
    for (const auto& s : j.at("samples")) {
      r.per_sample.emplace_back(s.at("id").get<std::string>(), s.at("alpha").get<double>());
    }
    for (const auto& e : j.at("excluded")) {
      r.excluded.push_back({e.at("id").get<std::string>(), e.at("reason").get<std::string>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed alignment report: ") + e.what());
  }
}

std::vector<AlignmentReport> ranked(std::vector<AlignmentReport> reports) {
  std::sort(reports.begin(), reports.end(), better);
  return reports;
}

Selection rank_and_select(const std::vector<AlignmentReport>& reports, std::size_t top_m) {
  if (top_m < 1) throw InvalidArgument("top_m must be >= 1");
  if (reports.empty()) throw InvalidArgument("no reports to rank");
  Selection selection;
  const auto order = ranked(reports);
  std::size_t usable = 0;
  for (const auto& r : order) {
    if (r.usable) ++usable;
  }
  if (top_m > usable) {
    selection.warnings.push_back("top_m = " + std::to_string(top_m) + " exceeds the " +
                                 std::to_string(usable) +
                                 " usable configurations; all of them survive");
  }
  for (const auto& r : order) {
    if (!r.usable) {
      selection.warnings.push_back("judge '" + r.judge_id + "' has no usable samples");
      continue;
    }
    if (selection.survivors.size() < top_m) selection.survivors.push_back(r.judge_id);
  }
  return selection;
}

nlohmann::json CycleState::to_json() const {
  auto cands = nlohmann::json::array();
  for (const auto& c : candidates) cands.push_back(c.to_json());
  auto reps = nlohmann::json::array();
  for (const auto& r : reports) reps.push_back(r.to_json());
  return {{"phase", phase},         {"benchmark", benchmark_id}, {"candidates", cands},
          {"reports", reps},        {"survivors", survivors},    {"warnings", warnings}};
}

CycleState CycleState::from_json(const nlohmann::json& j) {
  try {
    CycleState s;
    s.phase = j.at("phase").get<int>();
    s.benchmark_id = j.at("benchmark").get<std::string>();
    for (const auto& c : j.at("candidates")) s.candidates.push_back(judge::JudgeConfig::from_json(c));
    for (const auto& r : j.at("reports")) s.reports.push_back(AlignmentReport::from_json(r));
    s.survivors = j.at("survivors").get<std::vector<std::string>>();
    s.warnings = j.value("warnings", std::vector<std::string>{});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed cycle state: ") + e.what());
  }
}

std::vector<judge::JudgeConfig> CycleState::surviving_configs() const {
  std::vector<judge::JudgeConfig> out;
  for (const auto& id : survivors) {
    for (const auto& c : candidates) {
      if (c.id == id) out.push_back(c);
    }
  }
  return out;
}

PhaseResult run_phase(const core::HierarchyDataset& benchmark,
                      const std::vector<judge::JudgeConfig>& candidates,
                      const PhaseOptions& options) {
  if (candidates.empty()) throw InvalidArgument("no candidate judges");
  if (options.top_m < 1) throw InvalidArgument("top_m must be >= 1");
  PhaseResult result;
  result.state.phase = options.phase;
  result.state.benchmark_id = options.benchmark_id;
  result.state.candidates = candidates;
  for (const auto& config : candidates) {
    const judge::Judge judge(config,
                             options.client_for ? options.client_for(config) : nullptr);
    auto verdicts = judge::score_batch(judge, benchmark.samples, options.concurrency);
    try {
      result.state.reports.push_back(alignment_score(config.id, benchmark, verdicts));
    } catch (const InvalidArgument&) {
      result.state.reports.push_back(unusable_report(config.id, benchmark, verdicts));
    }
    result.verdicts.push_back(std::move(verdicts));
  }
  auto selection = rank_and_select(result.state.reports, options.top_m);
  result.state.survivors = std::move(selection.survivors);
  result.state.warnings = std::move(selection.warnings);
  return result;
}

std::string alignment_csv(const std::vector<AlignmentReport>& reports) {
  std::vector<std::pair<int, int>> columns;
  for (const auto& r : reports) {
    for (const auto& p : r.pairs) {
      if (std::find(columns.begin(), columns.end(), std::make_pair(p.upper, p.lower)) ==
          columns.end()) {
        columns.emplace_back(p.upper, p.lower);
      }
    }
  }
  std::sort(columns.begin(), columns.end());
  std::ostringstream out;
  out << "judge,usable,n_used,n_total,overall";
  for (const auto& [u, v] : columns) out << ",acc_" << u << '_' << v;
  out << '\n';
  for (const auto& r : reports) {
    // Judge ids are plain identifiers; quote anyway in case one has a comma.
    std::string id = r.judge_id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : id) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      id = quoted + "\"";
    }
    out << id << ',' << (r.usable ? "true" : "false") << ',' << r.n_used << ',' << r.n_total
        << ',' << (r.usable ? util::format_double(r.overall) : "");
    for (const auto& col : columns) {
      out << ',';
      for (const auto& p : r.pairs) {
        if (std::make_pair(p.upper, p.lower) == col) out << util::format_double(p.accuracy);
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace tierbench::tester
