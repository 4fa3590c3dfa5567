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

#include "tierbench/util/resources.hpp"

#include <map>

#include "tierbench/util/error.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::util {
namespace detail {
const std::map<std::string_view, std::string_view>& embedded_resources();
}  // namespace detail

std::string_view resource(std::string_view name) {
  const auto& all = detail::embedded_resources();
  auto it = all.find(name);
  if (it == all.end()) throw Error("unknown builtin resource: " + std::string(name));
  return it->second;
}

bool has_resource(std::string_view name) {
  return detail::embedded_resources().contains(name);
}

std::vector<std::string> resource_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : detail::embedded_resources()) names.emplace_back(name);
  return names;
}

std::string load_text(std::string_view reference) {
  if (reference.starts_with(kBuiltinPrefix)) {
    return std::string(resource(reference.substr(kBuiltinPrefix.size())));
  }
  return read_file(std::string(reference));
}

}  // namespace tierbench::util
