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

// JSON-lines persistence for datasets and task inputs.
//
// Dataset files hold one HierarchySample per line:
//   {"id", "kind", "content", "aux"?, "outputs": [{"tier", "content",
//    "provenance"}], "phase", "k"}
// The dataset-level fields (phase, k, kind) are taken from the first line.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tierbench/core/types.hpp"

namespace tierbench::core {

nlohmann::json to_json(const MutationRecord& record);
MutationRecord mutation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Provenance& provenance);
Provenance provenance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TaskInput& input);
TaskInput task_input_from_json(const nlohmann::json& j);

nlohmann::json sample_to_json(const HierarchySample& sample, const HierarchyDataset& dataset);

// Throws ParseError naming the line number on malformed lines, duplicate ids,
// or when the stream holds no samples.
HierarchyDataset parse_dataset(std::istream& in);
std::string serialize_dataset(const HierarchyDataset& dataset);

HierarchyDataset read_dataset(const std::string& path);
void write_dataset(const HierarchyDataset& dataset, const std::string& path);

// Task inputs: one {"id", "kind", "content", "aux"?} object per line.
std::vector<TaskInput> parse_inputs(std::istream& in);
std::vector<TaskInput> read_inputs(const std::string& path);
void write_inputs(const std::vector<TaskInput>& inputs, const std::string& path);

}  // namespace tierbench::core
