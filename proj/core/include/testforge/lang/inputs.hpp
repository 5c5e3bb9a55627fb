// Copyright 2026 The Testforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TESTFORGE_LANG_INPUTS_HPP_
#define TESTFORGE_LANG_INPUTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "testforge/lang/ast.hpp"
#include "testforge/lang/value.hpp"

namespace testforge::lang {

// A call's inputs: argument values plus the heap the handles point into.
struct CallInput {
  std::vector<Value> args;
  Heap heap;

  bool operator==(const CallInput&) const = default;
};

// One scalar (int or bool) position in a CallInput: either an argument or a
// field of an object reachable from the arguments.
struct ScalarSlot {
  enum class Where : std::uint8_t { kArg, kField };
  Where where = Where::kArg;
  int arg = -1;
  ObjectId object = 0;
  int field = -1;
  bool is_bool = false;
  std::string name;  // "x", "p.x", "l.Head.Data"

  bool operator==(const ScalarSlot&) const = default;
};

// Scalar slots in discovery order: arguments left to right; objects
// breadth-first from the arguments, fields in declaration order.
std::vector<ScalarSlot> scalar_slots(const Program& program, const FunctionDef& fn, const CallInput& input);

Value read_slot(const CallInput& input, const ScalarSlot& slot);
void write_slot(CallInput& input, const ScalarSlot& slot, std::int32_t value);

// "Point{x=1, y=42}" style rendering; shared objects print as @id on revisit.
std::string render_value(const Program& program, const Heap& heap, Value value);
std::string render_args(const Program& program, const CallInput& input);

// A fresh object of the record with default fields (0, false, null).
ObjectId allocate_default(const Program& program, Heap& heap, std::string_view record);

}  // namespace testforge::lang

#endif  // TESTFORGE_LANG_INPUTS_HPP_
