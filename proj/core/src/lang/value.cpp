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

#include "testforge/lang/value.hpp"

#include <stdexcept>

namespace testforge::lang {

std::string Value::to_string() const {
  switch (kind_) {
    case ValueKind::kInt:
      return std::to_string(scalar_);
    case ValueKind::kBool:
      return scalar_ != 0 ? "true" : "false";
    case ValueKind::kHandle:
      return "@" + std::to_string(handle_);
    case ValueKind::kNull:
      return "null";
    case ValueKind::kVoid:
      return "void";
  }
  return "?";
}

ObjectId Heap::allocate(std::string record, std::vector<Value> fields) {
  ObjectId id = next_id_++;
  objects_.emplace(id, HeapObject{std::move(record), std::move(fields)});
  return id;
}

void Heap::insert(ObjectId id, HeapObject object) {
  objects_[id] = std::move(object);
  if (id >= next_id_) next_id_ = id + 1;
}

const HeapObject& Heap::at(ObjectId id) const {
  auto it = objects_.find(id);
  if (it == objects_.end()) throw std::out_of_range("no object @" + std::to_string(id));
  return it->second;
}

HeapObject& Heap::at(ObjectId id) {
  auto it = objects_.find(id);
  if (it == objects_.end()) throw std::out_of_range("no object @" + std::to_string(id));
  return it->second;
}

bool Heap::well_formed() const {
  for (const auto& [id, obj] : objects_) {
    for (const Value& v : obj.fields) {
      if (v.is_handle() && !contains(v.handle())) return false;
    }
  }
  return true;
}

}  // namespace testforge::lang
