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

// Concolic (dynamic symbolic) exploration.
//
// Integer and boolean parameters, and scalar fields reachable from record
// parameters, are the symbolic inputs. Each run collects the constraints of
// the branches it took; flipping one of them and solving the prefix yields
// an input for a new path.

#ifndef TESTFORGE_CONCOLIC_CONCOLIC_HPP_
#define TESTFORGE_CONCOLIC_CONCOLIC_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "testforge/concolic/test_case.hpp"
#include "testforge/lang/inputs.hpp"
#include "testforge/lang/interpreter.hpp"
#include "testforge/solver/constraint.hpp"

namespace testforge::concolic {

struct PathEntry {
  solver::Constraint constraint;  // oriented the way the run went
  lang::NodeId location = lang::kNoNode;
  std::size_t depth = 0;  // index of the decision in the trace
};

struct PathCondition {
  std::vector<PathEntry> entries;
  // Divisor pins: symbolic divisors fixed to their concrete value, with the
  // number of trace events recorded before the pin.
  std::vector<std::pair<std::size_t, solver::Constraint>> pins;
  std::vector<solver::VarDecl> vars;     // one per scalar slot
  std::vector<lang::ScalarSlot> slots;
};

struct SymbolicRun {
  lang::ExecutionResult result;
  PathCondition path;
};

// Runs fn concretely while tracking symbolic shadows. The result equals
// plain eval_call on the same input; throws std::logic_error if a collected
// constraint does not hold on the input.
SymbolicRun execute_symbolic(const lang::Program& program, std::string_view fn, const lang::CallInput& input,
                             const lang::ExecOptions& options = {});

// The constraints `requires` imposes along the path it takes on `input`,
// oriented so that the clause holds. Empty when fn has no requires clause.
std::vector<solver::Constraint> requires_constraints(const lang::Program& program, std::string_view fn,
                                                     const lang::CallInput& input, const PathCondition& shape);

enum class SearchPolicy : std::uint8_t { kBreadthFirst, kDepthFirst };

struct ExploreLimits {
  std::uint32_t path_budget = 250;  // decisions per path
  std::uint32_t max_queries = 1000;
  std::uint64_t solver_nodes = 20'000;
  std::uint64_t step_budget = lang::kDefaultStepBudget;
  SearchPolicy policy = SearchPolicy::kBreadthFirst;
  // Domain of every symbolic int input.
  std::int32_t int_lo = INT32_MIN;
  std::int32_t int_hi = INT32_MAX;

  bool operator==(const ExploreLimits&) const = default;
};

// An executed run that negation targets refer back to.
struct ParentRun {
  lang::CallInput input;
  lang::PathSignature signature;
  PathCondition path;
  std::vector<solver::Constraint> requires_cs;
  std::vector<solver::VarDecl> vars;  // with the exploration's domains
};

struct NegationTarget {
  std::shared_ptr<const ParentRun> parent;
  std::size_t entry = 0;  // index into parent->path.entries
  std::size_t depth = 0;  // trace index of the flipped decision
  std::uint64_t seq = 0;

  // Decisions to reproduce; the last one is flipped.
  lang::PathSignature prefix() const;
  // The flipped constraint first, then the path prefix, the divisor pins
  // and the requires constraints of the parent.
  std::vector<solver::Constraint> query() const;
};

// Prefix tree over executed path signatures.
class PathTrie {
 public:
  void insert(const lang::PathSignature& path);
  // True when some inserted path starts with `prefix`.
  bool covers_prefix(const lang::PathSignature& prefix) const;

 private:
  struct Node {
    std::map<lang::TraceEvent, std::unique_ptr<Node>> next;
  };
  Node root_;
};

struct ExplorationState {
  ExploreLimits limits;
  std::map<std::pair<std::size_t, std::uint64_t>, NegationTarget> frontier;  // (depth, seq)
  std::set<lang::PathSignature> signatures;
  PathTrie covered;
  std::set<lang::PathSignature> attempted;  // targets already taken off the frontier
  std::uint64_t next_seq = 0;

  std::uint64_t queries = 0;
  std::uint64_t covered_paths = 0;
  std::uint64_t infeasible = 0;
  std::uint64_t unresolved = 0;
  std::uint64_t bound_exceeded = 0;
  std::uint64_t divergences = 0;
  std::uint64_t duplicates = 0;

  // Every target chosen, in order.
  std::vector<lang::PathSignature> chosen;
  // Queries answered Unsat, kept for auditing (first 1000).
  std::vector<NegationTarget> infeasible_log;
};

// Takes the next target off the frontier: deepest first (latest on ties)
// under DFS, shallowest first (earliest on ties) under BFS. Targets whose
// prefix an executed path already covers are discarded.
std::optional<NegationTarget> choose_next(ExplorationState& state);

struct Exploration {
  std::vector<TestCase> cases;
  ExplorationState state;
};

// Seeds default to 0/false scalars; record parameters get an all-null seed
// followed by a seed of default objects.
Exploration explore(const lang::Program& program, std::string_view fn, const ExploreLimits& limits = {},
                    const std::vector<lang::CallInput>& seeds = {});

std::vector<lang::CallInput> default_seeds(const lang::Program& program, std::string_view fn);

}  // namespace testforge::concolic

#endif  // TESTFORGE_CONCOLIC_CONCOLIC_HPP_
