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

#include <string>
#include <string_view>
#include <vector>

namespace tierbench::util {

// Files under data/ are compiled into the library. Names are paths relative
// to data/, e.g. "prompts/judge/summarization_prompt1.txt".
std::string_view resource(std::string_view name);
bool has_resource(std::string_view name);
std::vector<std::string> resource_names();

// Resolves a "builtin:<name>" reference to the embedded resource, anything
// else is read as a file path.
std::string load_text(std::string_view reference);

inline constexpr std::string_view kBuiltinPrefix = "builtin:";

}  // namespace tierbench::util
