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

// Bounded-exhaustive generation of heap structures.
//
// A finitization bounds every field of a root object and of a pool of objects
// per record type. generate() walks the candidate vectors over those bounds,
// runs a boolean subject-language predicate on each decoded heap and keeps the
// ones it accepts. The predicate's field reads decide which candidates can be
// skipped, and reference fields only ever point at the next fresh pool object,
// so each isomorphism class is produced once.

#ifndef TESTFORGE_HEAPGEN_HEAPGEN_HPP_
#define TESTFORGE_HEAPGEN_HEAPGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/lang/ast.hpp"
#include "testforge/lang/value.hpp"

namespace testforge::heapgen {

class FinitizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DomainKind : std::uint8_t { kInt, kBool, kRef };

struct FieldDomain {
  DomainKind kind = DomainKind::kInt;
  std::int32_t lo = 0;  // kInt
  std::int32_t hi = 0;
  std::string pool;     // kRef; empty means null only
  bool nullable = false;

  bool operator==(const FieldDomain&) const = default;
};

struct Pool {
  std::string name;
  std::string record;
  std::size_t count = 0;

  bool operator==(const Pool&) const = default;
};

struct Binding {
  std::string record;
  std::string field;
  FieldDomain domain;

  bool operator==(const Binding&) const = default;
};

struct Finitization {
  std::string root;
  std::vector<Pool> pools;
  std::vector<Binding> bindings;

  const Pool* find_pool(std::string_view name) const;
  const Binding* find_binding(std::string_view record, std::string_view field) const;
  bool operator==(const Finitization&) const = default;
};

// Parses the line-based text form:
//
//   root LinkedList
//   objset nodes = LinkedListElement 3
//   set LinkedList.Head = nodes null
//   set LinkedList.size = int 0 3
//   set LinkedListElement.mark = bool
//
// '#' starts a comment. Every field of the root record must be bound; other
// unbound fields get the singleton domain {0}, {false} or {null}. Throws
// FinitizationError naming the offending line.
Finitization finitize(const lang::Program& program, std::string_view text);
std::string to_text(const Finitization& fin);

// One index per (object, field) pair into that field's domain.
using CandidateVector = std::vector<std::uint32_t>;
// Candidate positions in first-read order, without repeats.
using AccessLog = std::vector<std::size_t>;

// The flattened search space of a finitization. The root object comes first,
// then each pool in the order of its record's declaration; within an object
// the fields follow declaration order.
class CandidateSpace {
 public:
  CandidateSpace(const lang::Program& program, Finitization fin);

  const Finitization& finitization() const { return fin_; }
  std::size_t size() const { return slots_.size(); }
  std::size_t domain_size(std::size_t pos) const;
  const FieldDomain& domain(std::size_t pos) const { return slots_[pos].domain; }
  lang::ObjectId object_of(std::size_t pos) const { return slots_[pos].object; }
  int field_of(std::size_t pos) const { return slots_[pos].field; }
  std::optional<std::size_t> position(lang::ObjectId object, int field) const;
  // Pool index of the object at domain index `index`, or -1 for null.
  std::int64_t pool_index(std::size_t pos, std::uint32_t index) const;
  lang::Value value(std::size_t pos, std::uint32_t index) const;

  lang::ObjectId root() const { return 1; }
  // Product of the domain sizes, saturating at UINT64_MAX.
  std::uint64_t total() const;
  lang::Heap decode(const CandidateVector& cv) const;

 private:
  struct SlotInfo {
    lang::ObjectId object;
    int field;
    FieldDomain domain;
  };

  Finitization fin_;
  std::vector<SlotInfo> slots_;
  std::vector<std::string> object_records_;  // indexed by id - 1
  std::vector<std::size_t> object_base_;     // first slot of each object
  std::vector<lang::ObjectId> pool_first_;   // per pool in fin_ order
};

// The successor of cv after a predicate run that read `log`: the last logged
// field is advanced, later logged fields reset, and unlogged fields are left
// alone, which skips every candidate that differs from cv only where the
// predicate did not look. With isomorphism breaking a reference field may
// only move to one past the largest object of its pool referenced earlier in
// the log. Returns nullopt when the space is exhausted.
std::optional<CandidateVector> prune_next(const CandidateSpace& space, CandidateVector cv, const AccessLog& log,
                                          bool break_isomorphism = true);
// Plain lexicographic successor with the last position fastest.
std::optional<CandidateVector> lexicographic_next(const CandidateSpace& space, CandidateVector cv);

struct Structure {
  lang::Heap heap;
  lang::ObjectId root = 1;
  CandidateVector vector;
};

// Labels of the objects reachable from the root, numbered by first visit in
// a breadth-first walk over fields in declaration order. Equal exactly when
// the reachable parts are related by an object renaming.
std::string canonical_form(const Structure& s);
// Copies the reachable part of s into heap under fresh ids and returns the
// handle of the copied root.
lang::Value copy_into(const Structure& s, lang::Heap& heap);
// DOT digraph of the reachable objects with scalar fields in the node labels
// and one labeled edge per non-null reference.
std::string to_dot(const lang::Program& program, const Structure& s);

struct GenerateOptions {
  bool prune = true;  // false enumerates every candidate vector
  std::uint64_t step_budget = 100'000;
  std::uint64_t max_candidates = 0;  // 0 means no limit
};

struct GenerateStats {
  std::uint64_t explored = 0;        // predicate runs
  std::uint64_t valid = 0;           // runs that returned true
  std::uint64_t classes = 0;         // structures emitted
  std::uint64_t pruned_skips = 0;    // candidates never run
  std::uint64_t errors = 0;          // runtime errors, counted invalid
  std::uint64_t bound_exceeded = 0;  // budget overruns, counted invalid
  bool truncated = false;            // stopped at max_candidates or by the sink

  bool operator==(const GenerateStats&) const = default;
};

std::string to_string(const GenerateStats& stats);

// Emits each accepted structure of a new isomorphism class to `sink`, which
// returns false to stop. Throws std::invalid_argument unless `predicate` is a
// function from the root record to bool.
GenerateStats generate(const lang::Program& program, std::string_view predicate, const Finitization& fin,
                       const GenerateOptions& options, const std::function<bool(const Structure&)>& sink);

struct Generation {
  std::vector<Structure> structures;
  GenerateStats stats;
};

Generation generate(const lang::Program& program, std::string_view predicate, const Finitization& fin,
                    const GenerateOptions& options = {});

}  // namespace testforge::heapgen

#endif  // TESTFORGE_HEAPGEN_HEAPGEN_HPP_
