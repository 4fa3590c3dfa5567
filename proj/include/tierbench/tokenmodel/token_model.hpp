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

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tierbench/tokenmodel/token_distribution.hpp"

namespace tierbench::tokenmodel {

enum class BackendKind { kMarkov, kRemote };

// Probability assigned to impossible events when scoring likelihoods.
inline constexpr double kProbabilityFloor = 1e-12;
inline const double kLogProbabilityFloor = std::log(kProbabilityFloor);

// Uniform interface to next-token distributions. Implementations must be safe
// to query concurrently.
class TokenModel {
 public:
  virtual ~TokenModel() = default;

  virtual BackendKind kind() const = 0;

  // The min(top, support) most likely next tokens, renormalized over the
  // returned set. Throws InvalidArgument if top == 0.
  virtual TokenDistribution next_distribution(std::span<const std::string> context,
                                              std::size_t top) const = 0;

  // ln P(token | context) under the full (uncut) distribution, floored at
  // ln(1e-12).
  virtual double conditional_log_prob(std::span<const std::string> context,
                                      std::string_view token) const = 0;

  virtual std::vector<std::string> tokenize(std::string_view text) const = 0;
  virtual std::string detokenize(std::span<const std::string> tokens) const = 0;

  // Sampling this token ends a generation.
  virtual std::string_view end_token() const = 0;

  // Known vocabulary; empty when the backend does not expose one.
  virtual const std::vector<std::string>& vocabulary() const = 0;
};

// Mean per-token natural-log likelihood: the mean over i of
// ln P(sequence[i] | sequence[0..i)). Throws InvalidArgument when empty.
double log_likelihood(const TokenModel& model, std::span<const std::string> sequence);

// Sum of ln P(sequence[i] | sequence[0..i)) for i in [begin, size).
double sum_log_likelihood(const TokenModel& model, std::span<const std::string> sequence,
                          std::size_t begin);

}  // namespace tierbench::tokenmodel
