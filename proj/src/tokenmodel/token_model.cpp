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

#include "tierbench/tokenmodel/token_model.hpp"

#include "tierbench/util/error.hpp"

namespace tierbench::tokenmodel {

double sum_log_likelihood(const TokenModel& model, std::span<const std::string> sequence,
                          std::size_t begin) {
  double total = 0.0;
  for (std::size_t i = begin; i < sequence.size(); ++i) {
    total += model.conditional_log_prob(sequence.first(i), sequence[i]);
  }
  return total;
}

double log_likelihood(const TokenModel& model, std::span<const std::string> sequence) {
  if (sequence.empty()) throw InvalidArgument("log_likelihood of an empty sequence");
  return sum_log_likelihood(model, sequence, 0) / static_cast<double>(sequence.size());
}

}  // namespace tierbench::tokenmodel
