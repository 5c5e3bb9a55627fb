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

#ifndef TESTFORGE_SOLVER_SOLVE_HPP_
#define TESTFORGE_SOLVER_SOLVE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "testforge/solver/constraint.hpp"
#include "testforge/solver/sym_expr.hpp"

namespace testforge::solver {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

struct SolveOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
  // Preferred value per variable, tried first. Lets callers keep
  // unconstrained inputs stable across queries.
  std::vector<std::optional<std::int32_t>> hint;
};

enum class SolveStatus : std::uint8_t { kSat, kUnsat, kUnknown };

std::string_view to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::kUnknown;
  std::vector<std::int32_t> model;  // indexed by VarId when kSat
  std::uint64_t nodes = 0;
};

// Decides the conjunction `cs` over the declared variables. A Sat model is
// re-checked against every constraint before it is returned. Throws
// std::invalid_argument when a constraint mentions an undeclared variable or
// a domain is empty.
SolveResult solve(std::span<const VarDecl> vars, std::span<const Constraint> cs,
                  const SolveOptions& options = {});

// Equisatisfiable, model-preserving rewrite: constant folding, identity
// elimination, substitution of variables fixed by `v == k`, and removal of
// tautologies. A constant-false constraint is kept so the result stays
// unsatisfiable. When `domains` is given, interval propagation tightens it.
std::vector<Constraint> simplify(std::span<const Constraint> cs, std::vector<VarDecl>* domains = nullptr);

}  // namespace testforge::solver

#endif  // TESTFORGE_SOLVER_SOLVE_HPP_
