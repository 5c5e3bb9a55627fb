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

#ifndef TESTFORGE_SOLVER_CONSTRAINT_HPP_
#define TESTFORGE_SOLVER_CONSTRAINT_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "testforge/solver/sym_expr.hpp"

namespace testforge::solver {

enum class Rel : std::uint8_t { kLt, kLe, kGt, kGe, kEq, kNe };

std::string_view to_string(Rel rel);
Rel negate(Rel rel);
// The relation with its operands swapped: a < b iff b > a.
Rel mirror(Rel rel);
bool holds(Rel rel, std::int32_t a, std::int32_t b);

// Where a constraint came from: a branch location and the side taken.
struct Provenance {
  std::int32_t location = -1;
  bool polarity = true;

  bool operator==(const Provenance&) const = default;
};

struct Constraint {
  Rel rel = Rel::kEq;
  SymExpr lhs;
  SymExpr rhs;
  std::optional<Provenance> provenance;
};

Constraint make_constraint(SymExpr lhs, Rel rel, SymExpr rhs, std::optional<Provenance> prov = {});

// Logical negation: swaps the relation and flips the provenance polarity.
Constraint negate(const Constraint& c);

bool holds(const Constraint& c, std::span<const std::int32_t> model);
bool structurally_equal(const Constraint& a, const Constraint& b);

std::string to_string(const Constraint& c, std::span<const VarDecl> vars = {});
// Debug dump: variable domains, then one constraint per line.
std::string dump(std::span<const VarDecl> vars, std::span<const Constraint> cs);

}  // namespace testforge::solver

#endif  // TESTFORGE_SOLVER_CONSTRAINT_HPP_
