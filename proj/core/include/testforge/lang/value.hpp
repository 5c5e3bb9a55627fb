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

#ifndef TESTFORGE_LANG_VALUE_HPP_
#define TESTFORGE_LANG_VALUE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace testforge::lang {

using ObjectId = std::uint32_t;

enum class ValueKind : std::uint8_t { kInt, kBool, kHandle, kNull, kVoid };

// A runtime value of the subject language. Integers are 32-bit and all
// arithmetic on them wraps modulo 2^32.
class Value {
 public:
  constexpr Value() = default;

  static constexpr Value Int(std::int32_t v) { return Value(ValueKind::kInt, v, 0); }
  static constexpr Value Bool(bool b) { return Value(ValueKind::kBool, b ? 1 : 0, 0); }
  static constexpr Value Handle(ObjectId id) { return Value(ValueKind::kHandle, 0, id); }
  static constexpr Value Null() { return Value(ValueKind::kNull, 0, 0); }
  static constexpr Value Void() { return Value(ValueKind::kVoid, 0, 0); }

  constexpr ValueKind kind() const { return kind_; }
  constexpr bool is_int() const { return kind_ == ValueKind::kInt; }
  constexpr bool is_bool() const { return kind_ == ValueKind::kBool; }
  constexpr bool is_handle() const { return kind_ == ValueKind::kHandle; }
  constexpr bool is_null() const { return kind_ == ValueKind::kNull; }
  constexpr bool is_void() const { return kind_ == ValueKind::kVoid; }
  constexpr bool is_reference() const { return is_handle() || is_null(); }

  constexpr std::int32_t as_int() const { return scalar_; }
  constexpr bool as_bool() const { return scalar_ != 0; }
  constexpr ObjectId handle() const { return handle_; }

  constexpr bool operator==(const Value&) const = default;
  constexpr auto operator<=>(const Value&) const = default;

  std::string to_string() const;

 private:
  constexpr Value(ValueKind k, std::int32_t s, ObjectId h) : kind_(k), scalar_(s), handle_(h) {}

  ValueKind kind_ = ValueKind::kVoid;
  std::int32_t scalar_ = 0;
  ObjectId handle_ = 0;
};

struct HeapObject {
  std::string record;
  std::vector<Value> fields;  // record declaration order

  bool operator==(const HeapObject&) const = default;
};

// Object store. Ids are allocated densely from 1 so that runs are reproducible.
class Heap {
 public:
  ObjectId allocate(std::string record, std::vector<Value> fields);
  // Inserts an object under a caller-chosen id (used by structure decoders).
  void insert(ObjectId id, HeapObject object);

  bool contains(ObjectId id) const { return objects_.count(id) != 0; }
  const HeapObject& at(ObjectId id) const;
  HeapObject& at(ObjectId id);
  const std::map<ObjectId, HeapObject>& objects() const { return objects_; }
  std::size_t size() const { return objects_.size(); }
  ObjectId next_id() const { return next_id_; }

  // Every handle stored in a field names a live object.
  bool well_formed() const;

  bool operator==(const Heap&) const = default;

 private:
  std::map<ObjectId, HeapObject> objects_;
  ObjectId next_id_ = 1;
};

// Two's-complement helpers shared by the interpreter and the solver.
constexpr std::int32_t wrap32(std::int64_t v) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v)));
}
constexpr std::int32_t wrapping_add(std::int32_t a, std::int32_t b) {
  return wrap32(static_cast<std::int64_t>(a) + b);
}
constexpr std::int32_t wrapping_sub(std::int32_t a, std::int32_t b) {
  return wrap32(static_cast<std::int64_t>(a) - b);
}
constexpr std::int32_t wrapping_mul(std::int32_t a, std::int32_t b) {
  return wrap32(static_cast<std::int64_t>(a) * b);
}
constexpr std::int32_t wrapping_neg(std::int32_t a) { return wrap32(-static_cast<std::int64_t>(a)); }
// Truncating division; INT_MIN / -1 wraps to INT_MIN. b must be nonzero.
constexpr std::int32_t wrapping_div(std::int32_t a, std::int32_t b) {
  return wrap32(static_cast<std::int64_t>(a) / b);
}
constexpr std::int32_t wrapping_mod(std::int32_t a, std::int32_t b) {
  return wrap32(static_cast<std::int64_t>(a) % b);
}

}  // namespace testforge::lang

#endif  // TESTFORGE_LANG_VALUE_HPP_
