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

#include "testforge/solver/constraint.hpp"

#include <sstream>

namespace testforge::solver {

std::string_view to_string(Rel rel) {
  switch (rel) {
    case Rel::kLt: return "<";
    case Rel::kLe: return "<=";
    case Rel::kGt: return ">";
    case Rel::kGe: return ">=";
    case Rel::kEq: return "==";
    case Rel::kNe: return "!=";
  }
  return "?";
}

Rel negate(Rel rel) {
  switch (rel) {
    case Rel::kLt: return Rel::kGe;
    case Rel::kLe: return Rel::kGt;
    case Rel::kGt: return Rel::kLe;
    case Rel::kGe: return Rel::kLt;
    case Rel::kEq: return Rel::kNe;
    case Rel::kNe: return Rel::kEq;
  }
  return rel;
}

Rel mirror(Rel rel) {
  switch (rel) {
    case Rel::kLt: return Rel::kGt;
    case Rel::kLe: return Rel::kGe;
    case Rel::kGt: return Rel::kLt;
    case Rel::kGe: return Rel::kLe;
    default: return rel;
  }
}

bool holds(Rel rel, std::int32_t a, std::int32_t b) {
  switch (rel) {
    case Rel::kLt: return a < b;
    case Rel::kLe: return a <= b;
    case Rel::kGt: return a > b;
    case Rel::kGe: return a >= b;
    case Rel::kEq: return a == b;
    case Rel::kNe: return a != b;
  }
  return false;
}

Constraint make_constraint(SymExpr lhs, Rel rel, SymExpr rhs, std::optional<Provenance> prov) {
  return Constraint{rel, std::move(lhs), std::move(rhs), prov};
}

Constraint negate(const Constraint& c) {
  Constraint n = c;
  n.rel = negate(c.rel);
  if (n.provenance) n.provenance->polarity = !n.provenance->polarity;
  return n;
}

bool holds(const Constraint& c, std::span<const std::int32_t> model) {
  return holds(c.rel, eval(c.lhs, model), eval(c.rhs, model));
}

bool structurally_equal(const Constraint& a, const Constraint& b) {
  return a.rel == b.rel && a.provenance == b.provenance && structurally_equal(a.lhs, b.lhs) &&
         structurally_equal(a.rhs, b.rhs);
}

std::string to_string(const Constraint& c, std::span<const VarDecl> vars) {
  std::string s = to_string(c.lhs, vars) + " " + std::string(to_string(c.rel)) + " " + to_string(c.rhs, vars);
  if (c.provenance) s += "  @" + std::to_string(c.provenance->location) + (c.provenance->polarity ? ":T" : ":F");
  return s;
}

std::string dump(std::span<const VarDecl> vars, std::span<const Constraint> cs) {
  std::ostringstream os;
  for (const auto& v : vars) os << "var " << v.name << " in [" << v.lo << ", " << v.hi << "]\n";
  for (const auto& c : cs) os << to_string(c, vars) << '\n';
  return os.str();
}

}  // namespace testforge::solver
