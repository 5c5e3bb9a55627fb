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

// Instrumented tree-walking interpreter.
//
// Every execution records a trace: one event per branch decision (if/while
// conditions and the left operand of && / ||) and per check statement, plus
// the set of statements executed. An optional ExecutionObserver sees every
// arithmetic result and decision, which is how the concolic engine shadows
// integers symbolically and how bounded-exhaustive generation logs field
// reads.

#ifndef TESTFORGE_LANG_INTERPRETER_HPP_
#define TESTFORGE_LANG_INTERPRETER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "testforge/lang/ast.hpp"
#include "testforge/lang/value.hpp"

namespace testforge::lang {

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000;

struct ExecOptions {
  std::uint64_t step_budget = kDefaultStepBudget;
  // Maximum number of decision events (branches and checks) per run; 0 means
  // unlimited.
  std::uint32_t branch_budget = 0;
  // When set, a failing check aborts the run with kCheckViolated.
  bool strict_checks = false;
  std::uint32_t max_call_depth = 2000;
};

enum class OutcomeKind : std::uint8_t { kReturned, kCheckViolated, kRuntimeError, kStepBoundExceeded };
enum class RuntimeErrorKind : std::uint8_t { kNone, kDivByZero, kNullDereference };
enum class BoundKind : std::uint8_t { kNone, kSteps, kBranches, kCallDepth };

struct Outcome {
  OutcomeKind kind = OutcomeKind::kReturned;
  Value value;                 // kReturned
  NodeId location = kNoNode;   // check, faulting expression, or bound site
  RuntimeErrorKind error = RuntimeErrorKind::kNone;
  BoundKind bound = BoundKind::kNone;

  bool operator==(const Outcome&) const = default;
};

std::string to_string(OutcomeKind kind);
std::string to_string(RuntimeErrorKind kind);
std::string to_string(BoundKind kind);
std::string describe(const Outcome& outcome);

enum class EventKind : std::uint8_t { kBranch, kCheck };

struct TraceEvent {
  EventKind kind = EventKind::kBranch;
  NodeId location = kNoNode;
  bool value = false;  // branch taken / check held

  bool operator==(const TraceEvent&) const = default;
  auto operator<=>(const TraceEvent&) const = default;
};

// A path signature is the ordered sequence of decision events.
using PathSignature = std::vector<TraceEvent>;

struct Trace {
  std::vector<TraceEvent> events;
  std::vector<NodeId> statements;  // sorted, unique

  bool operator==(const Trace&) const = default;
};

struct ExecutionResult {
  Outcome outcome;
  Trace trace;
  std::uint64_t steps = 0;
  Heap heap;  // heap after the run

  bool any_check_failed() const;
  bool operator==(const ExecutionResult&) const = default;
};

// Identifies a symbolic shadow owned by an observer; the interpreter only
// moves these ids around alongside concrete values.
using ShadowId = std::int32_t;
inline constexpr ShadowId kNoShadow = -1;

enum class DecisionKind : std::uint8_t { kIf, kWhile, kShortCircuit, kCheck };

class ExecutionObserver {
 public:
  virtual ~ExecutionObserver() = default;

  virtual ShadowId on_unary(NodeId, UnaryOp, Value, ShadowId, Value /*result*/) { return kNoShadow; }
  virtual ShadowId on_binary(NodeId, BinaryOp, Value, ShadowId, Value, ShadowId, Value /*result*/) {
    return kNoShadow;
  }
  // Called before a division or modulo whose divisor carries a shadow. The
  // observer may pin the divisor to its concrete value.
  virtual void on_divisor(NodeId, Value, ShadowId) {}
  virtual void on_decision(NodeId, DecisionKind, bool /*taken*/, ShadowId /*condition*/) {}
  virtual void on_field_read(ObjectId, int /*field*/) {}
};

// Symbolic shadows for the inputs of a call.
struct InputShadows {
  std::vector<ShadowId> args;
  std::map<std::pair<ObjectId, int>, ShadowId> fields;
};

// Runs fn(args) on heap. Requires a typechecked program; throws
// std::invalid_argument when fn is unknown or args do not match its signature.
ExecutionResult eval_call(const Program& program, std::string_view fn, std::span<const Value> args,
                          Heap heap, const ExecOptions& options = {},
                          ExecutionObserver* observer = nullptr,
                          const InputShadows* shadows = nullptr);

enum class ContractKind : std::uint8_t { kRequires, kEnsures };

struct ContractResult {
  // nullopt when the function has no such clause or evaluation failed
  // (runtime error or bound exceeded).
  std::optional<bool> holds;
  ShadowId shadow = kNoShadow;
};

// Evaluates a requires clause against (args, heap), or an ensures clause
// against (args, heap after the call, result). Decisions inside the clause are
// reported to the observer but never recorded in a trace.
ContractResult eval_contract(const Program& program, std::string_view fn, ContractKind kind,
                             std::span<const Value> args, const Heap& heap,
                             Value result = Value::Void(), const ExecOptions& options = {},
                             ExecutionObserver* observer = nullptr,
                             const InputShadows* shadows = nullptr);

// Validates argument count and types against fn's signature; returns an error
// message or nullopt.
std::optional<std::string> check_arguments(const Program& program, const FunctionDef& fn,
                                           std::span<const Value> args, const Heap& heap);

}  // namespace testforge::lang

#endif  // TESTFORGE_LANG_INTERPRETER_HPP_
