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

#include "testforge/solver/sym_expr.hpp"

#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "solver/dag.hpp"
#include "testforge/lang/value.hpp"

namespace testforge::solver {

using lang::wrapping_add;
using lang::wrapping_div;
using lang::wrapping_mod;
using lang::wrapping_mul;
using lang::wrapping_neg;
using lang::wrapping_sub;

SymExpr make_node(SymOp op, SymExpr a, SymExpr b) {
  auto n = std::make_shared<SymNode>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return SymExpr(std::move(n));
}

SymExpr SymExpr::var(VarId id) {
  auto n = std::make_shared<SymNode>();
  n->op = SymOp::kVar;
  n->var = id;
  return SymExpr(std::move(n));
}

SymExpr SymExpr::constant(std::int32_t value) {
  auto n = std::make_shared<SymNode>();
  n->op = SymOp::kConst;
  n->value = value;
  return SymExpr(std::move(n));
}

SymOp SymExpr::op() const { return node_->op; }
std::int32_t SymExpr::value() const { return node_->value; }
VarId SymExpr::var_id() const { return node_->var; }
const SymExpr& SymExpr::lhs() const { return node_->a; }
const SymExpr& SymExpr::rhs() const { return node_->b; }

SymExpr operator-(const SymExpr& a) { return make_node(SymOp::kNeg, a); }
SymExpr operator+(const SymExpr& a, const SymExpr& b) { return make_node(SymOp::kAdd, a, b); }
SymExpr operator-(const SymExpr& a, const SymExpr& b) { return make_node(SymOp::kSub, a, b); }
SymExpr operator*(const SymExpr& a, const SymExpr& b) { return make_node(SymOp::kMul, a, b); }

SymExpr operator/(const SymExpr& a, const SymExpr& b) {
  if (!b.is_const() || b.value() == 0) throw std::invalid_argument("divisor must be a nonzero constant");
  return make_node(SymOp::kDiv, a, b);
}

SymExpr operator%(const SymExpr& a, const SymExpr& b) {
  if (!b.is_const() || b.value() == 0) throw std::invalid_argument("divisor must be a nonzero constant");
  return make_node(SymOp::kMod, a, b);
}

namespace {

std::int32_t apply(SymOp op, std::int32_t a, std::int32_t b) {
  switch (op) {
    case SymOp::kNeg: return wrapping_neg(a);
    case SymOp::kAdd: return wrapping_add(a, b);
    case SymOp::kSub: return wrapping_sub(a, b);
    case SymOp::kMul: return wrapping_mul(a, b);
    case SymOp::kDiv: return wrapping_div(a, b);
    case SymOp::kMod: return wrapping_mod(a, b);
    default: return 0;
  }
}

}  // namespace

std::int32_t eval(const SymExpr& e, std::span<const std::int32_t> model) {
  std::unordered_map<const SymNode*, int> index;
  auto order = detail::topo_order({e.get()}, &index);
  std::vector<std::int32_t> val(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const SymNode* n = order[i];
    switch (n->op) {
      case SymOp::kConst: val[i] = n->value; break;
      case SymOp::kVar:
        if (n->var < 0 || static_cast<std::size_t>(n->var) >= model.size())
          throw std::out_of_range("model does not cover variable");
        val[i] = model[n->var];
        break;
      default: {
        std::int32_t a = val[index.at(n->a.get())];
        std::int32_t b = n->b ? val[index.at(n->b.get())] : 0;
        val[i] = apply(n->op, a, b);
      }
    }
  }
  return val.back();
}

bool structurally_equal(const SymExpr& a, const SymExpr& b) {
  std::set<std::pair<const SymNode*, const SymNode*>> proven;
  std::vector<std::pair<const SymNode*, const SymNode*>> work{{a.get(), b.get()}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x == y) continue;
    if (x == nullptr || y == nullptr) return false;
    if (!proven.insert({x, y}).second) continue;
    if (x->op != y->op) return false;
    if (x->op == SymOp::kConst && x->value != y->value) return false;
    if (x->op == SymOp::kVar && x->var != y->var) return false;
    work.emplace_back(x->a.get(), y->a.get());
    work.emplace_back(x->b.get(), y->b.get());
  }
  return true;
}

namespace {

constexpr std::size_t kMaxPrinted = 4096;

std::string_view op_text(SymOp op) {
  switch (op) {
    case SymOp::kAdd: return "+";
    case SymOp::kSub: return "-";
    case SymOp::kMul: return "*";
    case SymOp::kDiv: return "/";
    case SymOp::kMod: return "%";
    default: return "?";
  }
}

}  // namespace

std::string to_string(const SymExpr& e, std::span<const VarDecl> vars) {
  if (!e) return "<null>";
  std::unordered_map<const SymNode*, int> index;
  auto order = detail::topo_order({e.get()}, &index);
  std::vector<std::string> text(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const SymNode* n = order[i];
    std::string s;
    switch (n->op) {
      case SymOp::kConst: s = std::to_string(n->value); break;
      case SymOp::kVar:
        s = (n->var >= 0 && static_cast<std::size_t>(n->var) < vars.size()) ? vars[n->var].name
                                                                           : "v" + std::to_string(n->var);
        break;
      case SymOp::kNeg: s = "-(" + text[index.at(n->a.get())] + ")"; break;
      default:
        s = "(" + text[index.at(n->a.get())] + " " + std::string(op_text(n->op)) + " " +
            text[index.at(n->b.get())] + ")";
    }
    if (s.size() > kMaxPrinted) s = s.substr(0, kMaxPrinted) + "...";
    text[i] = std::move(s);
  }
  return text.back();
}

void collect_vars(const SymExpr& e, std::vector<VarId>& out) {
  for (const SymNode* n : detail::topo_order({e.get()}))
    if (n->op == SymOp::kVar) out.push_back(n->var);
}

std::size_t dag_size(const SymExpr& e) { return detail::topo_order({e.get()}).size(); }

}  // namespace testforge::solver
