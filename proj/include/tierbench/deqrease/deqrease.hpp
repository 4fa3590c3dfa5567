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

// Controlled-quality degradation by decoding.
//
// A degraded output starts with a verbatim copy of the first
// ceil(p * n) tokens of an n-token baseline. Every following token is drawn
// from the model's top-k candidates after their probabilities have been
// handed out in reverse rank order (the least likely candidate receives the
// largest probability) and sharpened by raising the reversed weights to the
// power t. Smaller p, larger k and larger t all push the output further from
// what the model would have written.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tierbench/tokenmodel/token_model.hpp"
#include "tierbench/util/random.hpp"

namespace tierbench::deqrease {

struct DeqreaseParams {
  double prefix_fraction = 1.0;  // p in (0, 1]
  int top_k = 8;                 // >= 2
  double temperature = 7.0;      // t >= 1; t = 1 is the pure rank reversal
  std::uint64_t seed = 0;
  int max_new_tokens = 64;  // >= 1

  // Throws InvalidArgument when any field is out of range.
  void validate() const;

  nlohmann::json to_json() const;
  static DeqreaseParams from_json(const nlohmann::json& j);

  bool operator==(const DeqreaseParams&) const = default;
};

struct DeqreaseStep {
  tokenmodel::TokenDistribution cut;
  tokenmodel::TokenDistribution transformed;
  std::string chosen;
};

struct DeqreaseOutput {
  std::vector<std::string> tokens;
  std::size_t prefix_len = 0;
  bool stopped_at_end = false;
  std::vector<DeqreaseStep> steps;  // filled only when requested
};

// Rank reversal plus sharpening over an already-cut distribution: the rank-i
// token receives weight w_i = p_(n+1-i) and q_i = w_i^t / sum_j w_j^t. At t = 1
// the input probabilities are permuted without arithmetic, so the result is
// exact. t = +infinity puts all mass on the least likely token(s). For very
// large finite t, entries may underflow to zero. Throws InvalidArgument on an
// empty distribution or t < 1.
tokenmodel::TokenDistribution reverse_sharpen(const tokenmodel::TokenDistribution& dist,
                                              double temperature);

// ceil(p * n), clamped to [1, n] for n > 0.
std::size_t prefix_length(double prefix_fraction, std::size_t baseline_len);

// Inverse-CDF draw over the distribution's entries in their sorted order.
std::size_t sample_index(const tokenmodel::TokenDistribution& dist, util::Rng& rng);

// Copies the baseline prefix, then samples reversed-sharpened tokens until the
// end token is drawn (it is not appended) or max_new_tokens tokens have been
// added. When the prefix already covers the whole baseline, nothing is
// sampled. Model errors propagate.
DeqreaseOutput deqrease_generate(const tokenmodel::TokenModel& model,
                                 std::span<const std::string> baseline,
                                 const DeqreaseParams& params, bool record_steps = false);

// One JSON object per sampled step, newline separated.
std::string step_log_jsonl(const DeqreaseOutput& output);

struct DegradationGap {
  double low_mean = 0.0;   // mean per-token log-likelihood under params_low
  double high_mean = 0.0;  // same under params_high
  std::size_t low_tokens = 0;
  std::size_t high_tokens = 0;
};

// Monte Carlo degradation instrument. Runs `generations` seeded generations
// per setting (generation i uses baseline i mod |baselines| and the same
// derived seed under both settings) and pools the log-likelihood of every
// token past the shared verbatim prefix, i.e. from
// min(prefix_len(low), prefix_len(high)) onwards. When the settings differ
// only in top_k the window is exactly each output's sampled suffix.
// Throws InvalidArgument when generations == 0 or no baselines are given.
DegradationGap degradation_gap(const tokenmodel::TokenModel& model,
                               std::span<const std::vector<std::string>> baselines,
                               const DeqreaseParams& params_low,
                               const DeqreaseParams& params_high, std::size_t generations);

}  // namespace tierbench::deqrease
