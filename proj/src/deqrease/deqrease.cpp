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

#include "tierbench/deqrease/deqrease.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tierbench/util/error.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::deqrease {

using tokenmodel::TokenDistribution;
using tokenmodel::TokenProb;

void DeqreaseParams::validate() const {
  if (!(prefix_fraction > 0.0 && prefix_fraction <= 1.0)) {
    throw InvalidArgument("prefix_fraction must lie in (0, 1]");
  }
  if (top_k < 2) throw InvalidArgument("top_k must be >= 2");
  if (!(temperature >= 1.0)) throw InvalidArgument("temperature must be >= 1");
  if (max_new_tokens < 1) throw InvalidArgument("max_new_tokens must be >= 1");
}

nlohmann::json DeqreaseParams::to_json() const {
  return {
      {"prefix_fraction", prefix_fraction}, {"top_k", top_k},
      {"temperature", temperature},         {"seed", seed},
      {"max_new_tokens", max_new_tokens},
  };
}

DeqreaseParams DeqreaseParams::from_json(const nlohmann::json& j) {
  DeqreaseParams p;
  p.prefix_fraction = j.at("prefix_fraction").get<double>();
  p.top_k = j.value("top_k", p.top_k);
  p.temperature = j.value("temperature", p.temperature);
  p.seed = j.value("seed", p.seed);
  p.max_new_tokens = j.value("max_new_tokens", p.max_new_tokens);
  return p;
}

TokenDistribution reverse_sharpen(const TokenDistribution& dist, double temperature) {
  if (dist.empty()) throw InvalidArgument("reverse_sharpen of an empty distribution");
  if (!(temperature >= 1.0)) throw InvalidArgument("temperature must be >= 1");

  const auto& entries = dist.entries();
  const std::size_t n = entries.size();
  std::vector<TokenProb> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {entries[i].token, entries[n - 1 - i].probability};
  }
  if (temperature == 1.0) return TokenDistribution::from_probabilities(std::move(out));

  // Work in log space so that large t neither overflows nor divides 0 by 0.
  double max_log = -std::numeric_limits<double>::infinity();
  for (const auto& e : out) max_log = std::max(max_log, std::log(e.probability));
  std::vector<double> scaled(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = std::log(out[i].probability) - max_log;
    scaled[i] = diff == 0.0 ? 1.0 : std::exp(temperature * diff);
    total += scaled[i];
  }
  for (std::size_t i = 0; i < n; ++i) out[i].probability = scaled[i] / total;
  return TokenDistribution::from_probabilities(std::move(out));
}

std::size_t prefix_length(double prefix_fraction, std::size_t baseline_len) {
  if (baseline_len == 0) return 0;
  return std::clamp<std::size_t>(util::ceil_fraction(prefix_fraction, baseline_len), 1,
                                 baseline_len);
}

std::size_t sample_index(const TokenDistribution& dist, util::Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i].probability <= 0.0) continue;
    last_positive = i;
    cumulative += dist[i].probability;
    if (u < cumulative) return i;
  }
  // Rounding left u just above the accumulated total.
  return last_positive;
}

DeqreaseOutput deqrease_generate(const tokenmodel::TokenModel& model,
                                 std::span<const std::string> baseline,
                                 const DeqreaseParams& params, bool record_steps) {
  params.validate();
  if (baseline.empty()) throw InvalidArgument("baseline must contain at least one token");

  DeqreaseOutput out;
  out.prefix_len = prefix_length(params.prefix_fraction, baseline.size());
  out.tokens.assign(baseline.begin(),
                    baseline.begin() + static_cast<std::ptrdiff_t>(out.prefix_len));
  if (out.prefix_len == baseline.size()) return out;

  util::Rng rng(params.seed);
  const auto end_token = model.end_token();
  for (int step = 0; step < params.max_new_tokens; ++step) {
    auto cut = model.next_distribution(out.tokens, static_cast<std::size_t>(params.top_k));
    auto transformed = reverse_sharpen(cut, params.temperature);
    std::string chosen = transformed[sample_index(transformed, rng)].token;
    const bool is_end = chosen == end_token;
    if (record_steps) {
      out.steps.push_back({std::move(cut), std::move(transformed), chosen});
    }
    if (is_end) {
      out.stopped_at_end = true;
      break;
    }
    out.tokens.push_back(std::move(chosen));
  }
  return out;
}

std::string step_log_jsonl(const DeqreaseOutput& output) {
  std::string out;
  for (std::size_t i = 0; i < output.steps.size(); ++i) {
    const auto& s = output.steps[i];
    const nlohmann::json j = {
        {"step", i},
        {"cut", s.cut.to_json()},
        {"transformed", s.transformed.to_json()},
        {"chosen", s.chosen},
    };
    out += j.dump();
    out += '\n';
  }
  return out;
}

DegradationGap degradation_gap(const tokenmodel::TokenModel& model,
                               std::span<const std::vector<std::string>> baselines,
                               const DeqreaseParams& params_low,
                               const DeqreaseParams& params_high, std::size_t generations) {
  if (generations == 0) throw InvalidArgument("degradation_gap needs at least one generation");
  if (baselines.empty()) throw InvalidArgument("degradation_gap needs baselines");

  DegradationGap gap;
  double low_sum = 0.0;
  double high_sum = 0.0;
  for (std::size_t i = 0; i < generations; ++i) {
    const auto& baseline = baselines[i % baselines.size()];
    const std::size_t window_start =
        std::min(prefix_length(params_low.prefix_fraction, baseline.size()),
                 prefix_length(params_high.prefix_fraction, baseline.size()));

    auto low = params_low;
    auto high = params_high;
    low.seed = util::mix_seed(params_low.seed, i);
    high.seed = util::mix_seed(params_high.seed, i);

    const auto low_out = deqrease_generate(model, baseline, low);
    const auto high_out = deqrease_generate(model, baseline, high);
    if (low_out.tokens.size() > window_start) {
      low_sum += tokenmodel::sum_log_likelihood(model, low_out.tokens, window_start);
      gap.low_tokens += low_out.tokens.size() - window_start;
    }
    if (high_out.tokens.size() > window_start) {
      high_sum += tokenmodel::sum_log_likelihood(model, high_out.tokens, window_start);
      gap.high_tokens += high_out.tokens.size() - window_start;
    }
  }
  if (gap.low_tokens > 0) gap.low_mean = low_sum / static_cast<double>(gap.low_tokens);
  if (gap.high_tokens > 0) gap.high_mean = high_sum / static_cast<double>(gap.high_tokens);
  return gap;
}

}  // namespace tierbench::deqrease
