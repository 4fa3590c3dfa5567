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

#include "tierbench/tokenmodel/token_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tierbench/util/error.hpp"

namespace tierbench::tokenmodel {
namespace {

void check_unique(const std::vector<TokenProb>& entries) {
  std::set<std::string_view> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.token).second) {
      throw InvalidArgument("duplicate token in distribution: '" + e.token + "'");
    }
  }
}

}  // namespace

void sort_entries(std::vector<TokenProb>& entries) {
  std::sort(entries.begin(), entries.end(), [](const TokenProb& a, const TokenProb& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.token < b.token;
  });
}

TokenDistribution TokenDistribution::from_weights(std::vector<TokenProb> weights) {
  if (weights.empty()) throw InvalidArgument("empty distribution");
  check_unique(weights);
  double total = 0.0;
  for (const auto& w : weights) {
    if (!(w.probability > 0.0) || !std::isfinite(w.probability)) {
      throw InvalidArgument("weights must be positive and finite");
    }
    total += w.probability;
  }
  for (auto& w : weights) w.probability /= total;
  sort_entries(weights);
  return TokenDistribution(std::move(weights));
}

TokenDistribution TokenDistribution::from_probabilities(std::vector<TokenProb> probabilities) {
  if (probabilities.empty()) throw InvalidArgument("empty distribution");
  check_unique(probabilities);
  double total = 0.0;
  for (const auto& p : probabilities) {
    if (!(p.probability >= 0.0) || p.probability > 1.0) {
      throw InvalidArgument("probabilities must lie in [0, 1]");
    }
    total += p.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidArgument("probabilities must sum to 1");
  }
  sort_entries(probabilities);
  return TokenDistribution(std::move(probabilities));
}

TokenDistribution TokenDistribution::top(std::size_t n) const {
  if (n == 0) throw InvalidArgument("top must be >= 1");
  if (n >= entries_.size()) return *this;
  std::vector<TokenProb> kept(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n));
  double total = 0.0;
  for (const auto& e : kept) total += e.probability;
  for (auto& e : kept) e.probability /= total;
  sort_entries(kept);
  return TokenDistribution(std::move(kept));
}

double TokenDistribution::probability_of(std::string_view token) const {
  for (const auto& e : entries_) {
    if (e.token == token) return e.probability;
  }
  return 0.0;
}

nlohmann::json TokenDistribution::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& e : entries_) arr.push_back({e.token, e.probability});
  return arr;
}

}  // namespace tierbench::tokenmodel
