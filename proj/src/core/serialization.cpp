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

#include "tierbench/core/serialization.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tierbench/util/error.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::core {
namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* field) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(field);
  if (it == j.end()) throw ParseError(std::string("missing field '") + field + "'");
  return *it;
}

std::string require_string(const nlohmann::json& j, const char* field) {
  const auto& v = require(j, field);
  if (!v.is_string()) throw ParseError(std::string("field '") + field + "' must be a string");
  return v.get<std::string>();
}

int require_int(const nlohmann::json& j, const char* field) {
  const auto& v = require(j, field);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("field '") + field + "' must be an integer");
  }
  return v.get<int>();
}

TierOutput tier_output_from_json(const nlohmann::json& j) {
  TierOutput out;
  out.tier = require_int(j, "tier");
  out.content = require_string(j, "content");
  out.provenance = provenance_from_json(require(j, "provenance"));
  return out;
}

}  // namespace

nlohmann::json to_json(const MutationRecord& r) {
  nlohmann::json j = {
      {"operator", to_string(r.op)}, {"line", r.line},   {"column", r.column},
      {"before", r.before},          {"after", r.after}, {"pass", r.pass},
  };
  if (r.fallback) j["fallback"] = true;
  return j;
}

MutationRecord mutation_from_json(const nlohmann::json& j) {
  MutationRecord r;
  r.op = parse_mutation_operator(require_string(j, "operator"));
  r.line = require_int(j, "line");
  r.column = require_int(j, "column");
  r.before = require_string(j, "before");
  r.after = require_string(j, "after");
  r.pass = j.value("pass", 1);
  r.fallback = j.value("fallback", false);
  return r;
}

nlohmann::json to_json(const Provenance& p) {
  nlohmann::json j = {
      {"strategy", to_string(p.kind)},
      {"level", p.level},
  };
  if (!p.model.empty()) j["model"] = p.model;
  if (!p.params.empty()) j["params"] = p.params;
  if (!p.mutations.empty()) {
    auto arr = nlohmann::json::array();
    for (const auto& m : p.mutations) arr.push_back(to_json(m));
    j["mutations"] = std::move(arr);
  }
  if (p.failure) j["failure"] = *p.failure;
  return j;
}

Provenance provenance_from_json(const nlohmann::json& j) {
  Provenance p;
  p.kind = parse_provenance_kind(require_string(j, "strategy"));
  p.level = j.value("level", 1);
  p.model = j.value("model", std::string());
  if (auto it = j.find("params"); it != j.end()) {
    if (!it->is_object()) throw ParseError("field 'params' must be an object");
    p.params = *it;
  }
  if (auto it = j.find("mutations"); it != j.end()) {
    for (const auto& m : *it) p.mutations.push_back(mutation_from_json(m));
  }
  if (auto it = j.find("failure"); it != j.end() && it->is_string()) {
    p.failure = it->get<std::string>();
  }
  return p;
}

nlohmann::json to_json(const TaskInput& input) {
  nlohmann::json j = {
      {"id", input.id},
      {"kind", to_string(input.kind)},
      {"content", input.content},
  };
  if (input.aux) j["aux"] = *input.aux;
  return j;
}

TaskInput task_input_from_json(const nlohmann::json& j) {
  TaskInput input;
  input.id = require_string(j, "id");
  input.kind = parse_task_kind(require_string(j, "kind"));
  input.content = require_string(j, "content");
  if (auto it = j.find("aux"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("field 'aux' must be a string");
    input.aux = it->get<std::string>();
  }
  return input;
}

nlohmann::json sample_to_json(const HierarchySample& sample, const HierarchyDataset& dataset) {
  nlohmann::json j = to_json(sample.input);
  auto outputs = nlohmann::json::array();
  for (const auto& out : sample.outputs) {
    outputs.push_back({
        {"tier", out.tier},
        {"content", out.content},
        {"provenance", to_json(out.provenance)},
    });
  }
  j["outputs"] = std::move(outputs);
  j["phase"] = dataset.phase;
  j["k"] = dataset.k;
  return j;
}

HierarchyDataset parse_dataset(std::istream& in) {
  HierarchyDataset dataset;
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      HierarchySample sample;
      sample.input = task_input_from_json(j);
      const auto& outputs = require(j, "outputs");
      if (!outputs.is_array()) throw ParseError("field 'outputs' must be an array");
      for (const auto& o : outputs) sample.outputs.push_back(tier_output_from_json(o));
      const int k = require_int(j, "k");
      const std::string phase = require_string(j, "phase");
      if (dataset.samples.empty()) {
        dataset.k = k;
        dataset.phase = phase;
        dataset.kind = sample.input.kind;
      }
      if (!ids.insert(sample.input.id).second) {
        throw ParseError("duplicate id '" + sample.input.id + "'");
      }
      dataset.samples.push_back(std::move(sample));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (dataset.samples.empty()) throw ParseError("no samples");
  return dataset;
}

std::string serialize_dataset(const HierarchyDataset& dataset) {
  std::string out;
  for (const auto& sample : dataset.samples) {
    out += sample_to_json(sample, dataset).dump();
    out += '\n';
  }
  return out;
}

HierarchyDataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset: " + path);
  try {
    return parse_dataset(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_dataset(const HierarchyDataset& dataset, const std::string& path) {
  util::write_file(path, serialize_dataset(dataset));
}

std::vector<TaskInput> parse_inputs(std::istream& in) {
  std::vector<TaskInput> inputs;
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto input = task_input_from_json(nlohmann::json::parse(line));
      if (input.id.empty()) throw ParseError("empty id");
      if (input.content.empty()) throw ParseError("empty content");
      if (!ids.insert(input.id).second) throw ParseError("duplicate id '" + input.id + "'");
      inputs.push_back(std::move(input));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (inputs.empty()) throw ParseError("no inputs");
  return inputs;
}

std::vector<TaskInput> read_inputs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open inputs: " + path);
  try {
    return parse_inputs(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_inputs(const std::vector<TaskInput>& inputs, const std::string& path) {
  std::string out;
  for (const auto& input : inputs) {
    out += to_json(input).dump();
    out += '\n';
  }
  util::write_file(path, out);
}

}  // namespace tierbench::core
