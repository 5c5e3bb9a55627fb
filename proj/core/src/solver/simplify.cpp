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

#include <map>
#include <unordered_map>

#include "solver/compiled.hpp"
#include "solver/dag.hpp"
#include "testforge/lang/value.hpp"
#include "testforge/solver/solve.hpp"

namespace testforge::solver {
namespace {

bool is_const(const SymExpr& e, std::int32_t v) { return e.is_const() && e.value() == v; }

// Bottom-up rewrite with constant folding and identity elimination.
// `subst` maps variables to constants.
class Folder {
 public:
  explicit Folder(const std::map<VarId, std::int32_t>& subst) : subst_(subst) {}

  SymExpr fold(const SymExpr& root) {
    for (const SymNode* n : detail::topo_order({root.get()})) {
      if (memo_.count(n)) continue;
      memo_.emplace(n, rewrite(n));
    }
    return memo_.at(root.get());
  }

 private:
  SymExpr rewrite(const SymNode* n) {
    switch (n->op) {
      case SymOp::kConst: return SymExpr::constant(n->value);
      case SymOp::kVar: {
        auto it = subst_.find(n->var);
        return it != subst_.end() ? SymExpr::constant(it->second) : SymExpr::var(n->var);
      }
      default: break;
    }
    SymExpr a = memo_.at(n->a.get());
    SymExpr b = n->b ? memo_.at(n->b.get()) : SymExpr{};
    if (a.is_const() && (!b || b.is_const())) {
      std::int32_t x = a.value(), y = b ? b.value() : 0;
      switch (n->op) {
        case SymOp::kNeg: return SymExpr::constant(lang::wrapping_neg(x));
        case SymOp::kAdd: return SymExpr::constant(lang::wrapping_add(x, y));
        case SymOp::kSub: return SymExpr::constant(lang::wrapping_sub(x, y));
        case SymOp::kMul: return SymExpr::constant(lang::wrapping_mul(x, y));
        case SymOp::kDiv: return SymExpr::constant(lang::wrapping_div(x, y));
        case SymOp::kMod: return SymExpr::constant(lang::wrapping_mod(x, y));
        default: break;
      }
    }
    switch (n->op) {
      case SymOp::kNeg:
        if (a.op() == SymOp::kNeg) return a.lhs();
        return -a;
      case SymOp::kAdd:
        if (is_const(a, 0)) return b;
        if (is_const(b, 0)) return a;
        return a + b;
      case SymOp::kSub:
        if (is_const(b, 0)) return a;
        if (is_const(a, 0)) return -b;
        return a - b;
      case SymOp::kMul:
        if (is_const(a, 0) || is_const(b, 0)) return SymExpr::constant(0);
        if (is_const(a, 1)) return b;
        if (is_const(b, 1)) return a;
        if (is_const(a, -1)) return -b;
        if (is_const(b, -1)) return -a;
        return a * b;
      case SymOp::kDiv:
        if (is_const(b, 1)) return a;
        if (is_const(b, -1)) return -a;
        return a / b;
      case SymOp::kMod:
        if (is_const(b, 1) || is_const(b, -1)) return SymExpr::constant(0);
        return a % b;
      default:
        return a;
    }
  }

  const std::map<VarId, std::int32_t>& subst_;
  std::unordered_map<const SymNode*, SymExpr> memo_;
};

Constraint fold(const Constraint& c, const std::map<VarId, std::int32_t>& subst) {
  Folder f(subst);
  Constraint out = c;
  out.lhs = f.fold(c.lhs);
  out.rhs = f.fold(c.rhs);
  return out;
}

// `v == k` or `k == v`.
std::optional<std::pair<VarId, std::int32_t>> as_binding(const Constraint& c) {
  if (c.rel != Rel::kEq) return std::nullopt;
  if (c.lhs.is_var() && c.rhs.is_const()) return std::pair{c.lhs.var_id(), c.rhs.value()};
  if (c.rhs.is_var() && c.lhs.is_const()) return std::pair{c.rhs.var_id(), c.lhs.value()};
  return std::nullopt;
}

}  // namespace

std::vector<Constraint> simplify(std::span<const Constraint> cs, std::vector<VarDecl>* domains) {
  const std::map<VarId, std::int32_t> none;
  std::vector<Constraint> work;
  for (const auto& c : cs) work.push_back(fold(c, none));

  // Substitute fixed variables into every other constraint until stable. The
  // defining constraint stays so the variable keeps its value.
  std::map<VarId, std::int32_t> subst;
  std::vector<char> defining(work.size(), 0);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (defining[i]) continue;
      auto b = as_binding(work[i]);
      if (!b || subst.count(b->first)) continue;
      subst.emplace(*b);
      defining[i] = 1;
      grew = true;
    }
    if (!grew) break;
    for (std::size_t i = 0; i < work.size(); ++i)
      if (!defining[i]) work[i] = fold(work[i], subst);
  }

  std::vector<Constraint> out;
  bool have_false = false;
  for (auto& c : work) {
    if (c.lhs.is_const() && c.rhs.is_const()) {
      if (holds(c.rel, c.lhs.value(), c.rhs.value())) continue;
      if (have_false) continue;
      have_false = true;
    }
    out.push_back(std::move(c));
  }

  if (domains) {
    auto code = detail::compile(out, domains->size());
    std::vector<detail::Interval> dom;
    for (const auto& d : *domains) dom.push_back({d.lo, d.hi});
    detail::Propagator prop(code);
    if (prop.run(dom)) {
      for (std::size_t v = 0; v < dom.size(); ++v) {
        (*domains)[v].lo = static_cast<std::int32_t>(dom[v].lo);
        (*domains)[v].hi = static_cast<std::int32_t>(dom[v].hi);
      }
    }
  }
  return out;
}

}  // namespace testforge::solver
