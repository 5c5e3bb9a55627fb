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

// Breadth-first exploration of call sequences over a stateful API. Calls are
// taken only when their requires clause holds; the state invariant is checked
// after every call and each distinct state (by heap canonical form) is
// expanded once.

#ifndef TESTFORGE_SEQGEN_SEQGEN_HPP_
#define TESTFORGE_SEQGEN_SEQGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/heapgen/heapgen.hpp"
#include "testforge/lang/interpreter.hpp"
#include "testforge/randgen/random.hpp"

namespace testforge::seqgen {

inline constexpr std::uint64_t kDefaultSeed = 0x7e57f0e6e;

struct Operation {
  std::string function;
  // Domains of the parameters after the state; empty means full range.
  randgen::Domains args;
};

struct ApiSpec {
  std::string state;      // record type of the state object
  std::string invariant;  // bool predicate over the state
  std::string init;       // zero-argument constructor; empty allocates a default object
  std::vector<Operation> operations;
};

struct Call {
  std::string op;
  std::vector<lang::Value> args;  // excluding the state

  bool operator==(const Call&) const = default;
};

std::string to_string(const Call& call);

enum class SequenceStatus : std::uint8_t {
  kOk,
  kInvariantViolated,
  kContractViolation,
  kCheckViolation,
  kRuntimeError,
  kBoundExceeded,
};

std::string_view to_string(SequenceStatus s);

struct Sequence {
  std::vector<Call> calls;
  SequenceStatus status = SequenceStatus::kOk;
  std::size_t state = 0;  // node reached by the last call

  bool failing() const { return status != SequenceStatus::kOk; }
};

std::string to_string(const Sequence& seq);

struct StateNode {
  std::string canonical;
  heapgen::Structure state;
  SequenceStatus status = SequenceStatus::kOk;  // failing nodes carry their failure
};

struct Edge {
  std::size_t source = 0;
  Call call;
  std::size_t target = 0;
};

struct StateGraph {
  std::vector<StateNode> nodes;
  std::vector<Edge> edges;
  std::size_t initial = 0;
};

struct SequenceOptions {
  std::size_t max_len = 3;
  std::size_t arg_budget = 3;  // argument tuples tried per operation
  std::uint64_t seed = kDefaultSeed;
  lang::ExecOptions exec;
};

struct SequenceExploration {
  StateGraph graph;
  std::vector<Sequence> sequences;  // breadth-first order

  std::vector<Sequence> failures() const;
};

// Throws std::invalid_argument when the API does not fit the program or the
// initial state violates the invariant.
SequenceExploration explore_sequences(const lang::Program& program, const ApiSpec& api,
                                      const SequenceOptions& options = {});

// The argument tuples tried for one operation: boundary combinations first,
// then seeded random draws, without repeats, at most arg_budget of them.
std::vector<std::vector<lang::Value>> argument_tuples(const lang::Program& program, const Operation& op,
                                                      std::size_t arg_budget, std::uint64_t seed);

struct Replay {
  heapgen::Structure state;
  SequenceStatus status = SequenceStatus::kOk;
};

// Runs calls from a fresh initial state, stopping at the first failure.
Replay replay(const lang::Program& program, const ApiSpec& api, const std::vector<Call>& calls,
              const lang::ExecOptions& exec = {});

// Failing states get a double border and red outline; edges are labeled with
// the call.
std::string graph_to_dot(const StateGraph& graph);

}  // namespace testforge::seqgen

#endif  // TESTFORGE_SEQGEN_SEQGEN_HPP_
