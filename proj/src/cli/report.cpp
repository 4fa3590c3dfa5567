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


#include "tierbench/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace tierbench::cli {
namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

}  // namespace

std::string render_text_report(const tester::CycleState& state, const RetentionSummary& retention,
                               const validate::GapReport& gaps) {
  std::ostringstream out;
  out << "phase " << state.phase << "  benchmark " << state.benchmark_id << '\n';
  out << "retained " << retention.retained << " of " << retention.total << " samples\n";
  for (const auto& g : gaps.gaps) {
    out << "gap " << g.upper << "->" << g.lower << "  " << fixed(g.mean, 2) << '\n';
  }
  out << '\n';

  std::size_t width = 5;
  for (const auto& r : state.reports) width = std::max(width, r.judge_id.size());
  out << pad("judge", width) << "  overall  used/total";
  if (!state.reports.empty()) {
    for (const auto& p : state.reports.front().pairs) {
      out << "  " << pad(std::to_string(p.upper) + ">" + std::to_string(p.lower), 5);
    }
  }
  out << "  survivor\n";
  for (const auto& r : tester::ranked(state.reports)) {
    out << pad(r.judge_id, width) << "  " << pad(r.usable ? fixed(r.overall, 4) : "n/a", 7)
        << "  " << pad(std::to_string(r.n_used) + "/" + std::to_string(r.n_total), 10);
    for (const auto& p : r.pairs) out << "  " << pad(fixed(p.accuracy, 3), 5);
    const bool survived =
        std::find(state.survivors.begin(), state.survivors.end(), r.judge_id) !=
        state.survivors.end();
    out << "  " << (survived ? "yes" : "no") << '\n';
  }
  for (const auto& w : state.warnings) out << "warning: " << w << '\n';
  return out.str();
}

std::string render_svg(const std::vector<tester::AlignmentReport>& reports) {
  constexpr double kBarWidth = 40.0;
  constexpr double kGap = 20.0;
  constexpr double kTop = 30.0;
  constexpr double kLabelSpace = 80.0;
  const double width = kGap + static_cast<double>(reports.size()) * (kBarWidth + kGap);
  const double baseline = kTop + kBarScale;
  const double height = baseline + kLabelSpace;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
      << fixed(height, 0) << "\" font-family=\"monospace\" font-size=\"10\">\n";
  out << "<line x1=\"0\" y1=\"" << fixed(baseline, 2) << "\" x2=\"" << fixed(width, 0)
      << "\" y2=\"" << fixed(baseline, 2) << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const double score = r.usable ? std::clamp(r.overall, 0.0, 1.0) : 0.0;
    const double h = score * kBarScale;
    const double x = kGap + static_cast<double>(i) * (kBarWidth + kGap);
    const double cx = x + kBarWidth / 2.0;
    out << "<rect x=\"" << fixed(x, 2) << "\" y=\"" << fixed(baseline - h, 2) << "\" width=\""
        << fixed(kBarWidth, 2) << "\" height=\"" << fixed(h, 2) << "\" fill=\"steelblue\"/>\n";
    out << "<text x=\"" << fixed(cx, 2) << "\" y=\"" << fixed(baseline - h - 4.0, 2)
        << "\" text-anchor=\"middle\">" << (r.usable ? fixed(r.overall, 3) : "n/a")
        << "</text>\n";
    out << "<text x=\"" << fixed(cx, 2) << "\" y=\"" << fixed(baseline + 12.0, 2)
        << "\" text-anchor=\"end\" transform=\"rotate(-45 " << fixed(cx, 2) << ' '
        << fixed(baseline + 12.0, 2) << ")\">" << xml_escape(r.judge_id) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tierbench::cli
