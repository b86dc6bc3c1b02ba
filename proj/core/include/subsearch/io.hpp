// Copyright 2026 The subsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBSEARCH_IO_HPP_
#define SUBSEARCH_IO_HPP_

#include <string>
#include <string_view>

#include "subsearch/instance.hpp"
#include "subsearch/sched.hpp"

namespace subsearch {

// Instance files:
//   {"n": 3, "labels": [...], "mode": "rational"|"float",
//    "f": {"kind": "tabular"|"modular"|"dag"|"tree"|"subset_weights"|"h_of", ...},
//    "g": {...}}
// Tabular value arrays have length 2^n and are indexed by mask value;
// rational values are written as "p/q" strings.

struct LoadedInstance {
  SearchInstance instance;
  std::string canonical_json;  // sorted keys, normalized values
  std::string digest;          // sha256 of the canonical form
};

LoadedInstance parse_instance_json(const std::string& text);
LoadedInstance load_instance_file(const std::string& path);

// Game files reuse the instance schema but only require the cost side:
//   {"n": ..., "labels": ..., "mode": ..., "f": {...}}
// A "g" entry, if present, is ignored.

struct LoadedCostFunction {
  SetFunctionPtr f;
  std::string canonical_json;
  std::string digest;
};

LoadedCostFunction parse_cost_function_json(const std::string& text);
LoadedCostFunction load_cost_function_file(const std::string& path);

// Scheduling files:
//   {"jobs": [...], "edges": [[s,t],...], "p": [...],
//    "w": [...] or "wA": [{"set": [...], "w": ...}],
//    "h": {"kind": ..., ...}, "mode": ...}

struct LoadedSchedule {
  PrecedenceInstance instance;
  std::string canonical_json;
  std::string digest;
};

LoadedSchedule parse_schedule_json(const std::string& text);
LoadedSchedule load_schedule_file(const std::string& path);

/// Instance JSON for a scheduling adapter (f from the precedence closure
/// costs, g from the weights), usable with the generic solver commands.
std::string schedule_to_instance_json(const PrecedenceInstance& instance);

std::string sha256_hex(std::string_view data);

}  // namespace subsearch

#endif  // SUBSEARCH_IO_HPP_
