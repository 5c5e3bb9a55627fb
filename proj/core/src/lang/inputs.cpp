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

#include "testforge/lang/inputs.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace testforge::lang {

std::vector<ScalarSlot> scalar_slots(const Program& program, const FunctionDef& fn, const CallInput& input) {
  std::vector<ScalarSlot> out;
  std::deque<std::pair<ObjectId, std::string>> queue;
  std::set<ObjectId> seen;
  for (std::size_t i = 0; i < fn.params.size() && i < input.args.size(); ++i) {
    const Value& v = input.args[i];
    const Type& t = fn.params[i].type;
    if (t.kind == TypeKind::kInt || t.kind == TypeKind::kBool) {
      ScalarSlot s;
      s.where = ScalarSlot::Where::kArg;
      s.arg = static_cast<int>(i);
      s.is_bool = t.kind == TypeKind::kBool;
      s.name = fn.params[i].name;
      out.push_back(std::move(s));
    } else if (v.is_handle() && seen.insert(v.handle()).second) {
      queue.emplace_back(v.handle(), fn.params[i].name);
    }
  }
  while (!queue.empty()) {
    auto [id, path] = queue.front();
    queue.pop_front();
    if (!input.heap.contains(id)) continue;
    const HeapObject& obj = input.heap.at(id);
    const RecordDecl* rec = program.find_record(obj.record);
    if (rec == nullptr) continue;
    for (std::size_t f = 0; f < rec->fields.size(); ++f) {
      const FieldDecl& fd = rec->fields[f];
      if (fd.type.kind == TypeKind::kInt || fd.type.kind == TypeKind::kBool) {
        ScalarSlot s;
        s.where = ScalarSlot::Where::kField;
        s.object = id;
        s.field = static_cast<int>(f);
        s.is_bool = fd.type.kind == TypeKind::kBool;
        s.name = path + "." + fd.name;
        out.push_back(std::move(s));
      } else if (fd.type.kind == TypeKind::kRecord) {
        const Value& ref = obj.fields[f];
        if (ref.is_handle() && seen.insert(ref.handle()).second) queue.emplace_back(ref.handle(), path + "." + fd.name);
      }
    }
  }
  return out;
}

Value read_slot(const CallInput& input, const ScalarSlot& slot) {
  if (slot.where == ScalarSlot::Where::kArg) return input.args[static_cast<std::size_t>(slot.arg)];
  return input.heap.at(slot.object).fields[static_cast<std::size_t>(slot.field)];
}

void write_slot(CallInput& input, const ScalarSlot& slot, std::int32_t value) {
  Value v = slot.is_bool ? Value::Bool(value != 0) : Value::Int(value);
  if (slot.where == ScalarSlot::Where::kArg) {
    input.args[static_cast<std::size_t>(slot.arg)] = v;
  } else {
    input.heap.at(slot.object).fields[static_cast<std::size_t>(slot.field)] = v;
  }
}

namespace {

void render(std::ostream& os, const Program& program, const Heap& heap, Value v, std::set<ObjectId>& open) {
  if (!v.is_handle()) {
    os << v.to_string();
    return;
  }
  ObjectId id = v.handle();
  if (!heap.contains(id)) {
    os << "@" << id << "?";
    return;
  }
  if (open.count(id) != 0) {
    os << "@" << id;
    return;
  }
  open.insert(id);
  const HeapObject& obj = heap.at(id);
  const RecordDecl* rec = program.find_record(obj.record);
  os << obj.record << "{";
  for (std::size_t f = 0; f < obj.fields.size(); ++f) {
    if (f > 0) os << ", ";
    os << (rec != nullptr ? rec->fields[f].name : "f" + std::to_string(f)) << "=";
    render(os, program, heap, obj.fields[f], open);
  }
  os << "}";
}

}  // namespace

std::string render_value(const Program& program, const Heap& heap, Value value) {
  std::ostringstream os;
  std::set<ObjectId> open;
  render(os, program, heap, value, open);
  return os.str();
}

std::string render_args(const Program& program, const CallInput& input) {
  std::ostringstream os;
  std::set<ObjectId> open;
  for (std::size_t i = 0; i < input.args.size(); ++i) {
    if (i > 0) os << ", ";
    render(os, program, input.heap, input.args[i], open);
  }
  return os.str();
}

ObjectId allocate_default(const Program& program, Heap& heap, std::string_view record) {
  const RecordDecl* rec = program.find_record(record);
  if (rec == nullptr) throw std::invalid_argument("unknown struct '" + std::string(record) + "'");
  std::vector<Value> fields;
  for (const auto& f : rec->fields) {
    switch (f.type.kind) {
      case TypeKind::kInt: fields.push_back(Value::Int(0)); break;
      case TypeKind::kBool: fields.push_back(Value::Bool(false)); break;
      default: fields.push_back(Value::Null()); break;
    }
  }
  return heap.allocate(rec->name, std::move(fields));
}

}  // namespace testforge::lang
