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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tierbench::util {

// Substitutes every `{name}` whose name is a key of `values`. Braces around
// unknown names are left untouched, so templates may contain literal braces.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values);

bool has_placeholder(std::string_view tmpl, std::string_view name);

// ceil(fraction * n), robust to representation error: 0.7 * 10 is 7, not 8.
std::size_t ceil_fraction(double fraction, std::size_t n);

std::string to_upper(std::string_view text);
std::string to_lower(std::string_view text);

std::vector<std::string> split_whitespace(std::string_view text);

// Reads a whole file; throws tierbench::Error naming the path on failure.
std::string read_file(const std::string& path);

// Writes atomically enough for our purposes (truncate + write + flush).
void write_file(const std::string& path, std::string_view content);

// Formats a double with up to 17 significant digits, shortest round-trip.
std::string format_double(double value);

}  // namespace tierbench::util
