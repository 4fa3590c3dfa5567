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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tierbench::tokenmodel {

struct TokenProb {
  std::string token;
  double probability = 0.0;

  bool operator==(const TokenProb&) const = default;
};

// A next-token candidate set. Entries are sorted by descending probability,
// ties broken by ascending token, and sum to 1 within 1e-9.
class TokenDistribution {
 public:
  TokenDistribution() = default;

  // Normalizes strictly positive weights. Throws InvalidArgument on empty
  // input, non-positive weights or duplicate tokens.
  static TokenDistribution from_weights(std::vector<TokenProb> weights);

  // Takes probabilities as given (no renormalization) after checking they are
  // >= 0 and sum to 1 within 1e-9. Used where exactness matters.
  static TokenDistribution from_probabilities(std::vector<TokenProb> probabilities);

  // The `n` most likely entries, renormalized over the kept set.
  TokenDistribution top(std::size_t n) const;

  const std::vector<TokenProb>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const TokenProb& operator[](std::size_t i) const { return entries_[i]; }

  // 0 when the token is absent.
  double probability_of(std::string_view token) const;

  nlohmann::json to_json() const;

  bool operator==(const TokenDistribution&) const = default;

 private:
  explicit TokenDistribution(std::vector<TokenProb> sorted) : entries_(std::move(sorted)) {}

  std::vector<TokenProb> entries_;
};

// Sort order used by every distribution: probability descending, token ascending.
void sort_entries(std::vector<TokenProb>& entries);

}  // namespace tierbench::tokenmodel
