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

#include "solver/compiled.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "solver/dag.hpp"
#include "testforge/lang/value.hpp"

namespace testforge::solver::detail {
namespace {

constexpr std::int64_t kMin = INT32_MIN;
constexpr std::int64_t kMax = INT32_MAX;

bool fits(const Interval& r) { return r.lo >= kMin && r.hi <= kMax; }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

// Inputs a with trunc(a / d) in q, for d > 0.
Interval div_preimage(Interval q, std::int64_t d) {
  Interval a;
  a.lo = q.lo > 0 ? q.lo * d : q.lo * d - (d - 1);
  a.hi = q.hi < 0 ? q.hi * d : q.hi * d + (d - 1);
  return a;
}

}  // namespace

Compiled compile(std::span<const Constraint> cs, std::size_t num_vars) {
  Compiled c;
  c.var_instr.assign(num_vars, -1);
  c.cons_of_var.assign(num_vars, {});
  std::vector<const SymNode*> roots;
  for (const auto& k : cs) {
    if (!k.lhs || !k.rhs) throw std::invalid_argument("constraint with null operand");
    roots.push_back(k.lhs.get());
    roots.push_back(k.rhs.get());
  }
  auto order = topo_order(roots);
  std::unordered_map<const SymNode*, int> slot;
  for (const SymNode* n : order) {
    if (n->op == SymOp::kVar) {
      if (n->var < 0 || static_cast<std::size_t>(n->var) >= num_vars)
        throw std::invalid_argument("constraint mentions undeclared variable v" + std::to_string(n->var));
      int& vi = c.var_instr[n->var];
      if (vi < 0) {
        vi = static_cast<int>(c.code.size());
        c.code.push_back(Instr{SymOp::kVar, 0, n->var, -1, -1});
      }
      slot[n] = vi;
      continue;
    }
    Instr in{n->op, n->value, -1, -1, -1};
    if (n->a) in.a = slot.at(n->a.get());
    if (n->b) in.b = slot.at(n->b.get());
    slot[n] = static_cast<int>(c.code.size());
    c.code.push_back(in);
  }
  // Variables each instruction depends on, to index constraints by variable.
  std::vector<std::vector<VarId>> deps(c.code.size());
  for (std::size_t i = 0; i < c.code.size(); ++i) {
    const Instr& in = c.code[i];
    if (in.op == SymOp::kVar) {
      deps[i] = {in.var};
      continue;
    }
    std::vector<VarId> d;
    if (in.a >= 0) d = deps[in.a];
    if (in.b >= 0) {
      std::vector<VarId> m;
      std::set_union(d.begin(), d.end(), deps[in.b].begin(), deps[in.b].end(), std::back_inserter(m));
      d = std::move(m);
    }
    deps[i] = std::move(d);
  }
  for (std::size_t k = 0; k < cs.size(); ++k) {
    CompiledConstraint cc{cs[k].rel, slot.at(cs[k].lhs.get()), slot.at(cs[k].rhs.get())};
    std::vector<VarId> vs;
    std::set_union(deps[cc.lhs].begin(), deps[cc.lhs].end(), deps[cc.rhs].begin(), deps[cc.rhs].end(),
                   std::back_inserter(vs));
    for (VarId v : vs) c.cons_of_var[v].push_back(static_cast<int>(k));
    c.vars_of_con.push_back(std::move(vs));
    c.cons.push_back(cc);
  }
  return c;
}

void eval_all(const Compiled& c, std::span<const std::int32_t> model, std::vector<std::int32_t>& out) {
  out.resize(c.code.size());
  for (std::size_t i = 0; i < c.code.size(); ++i) {
    const Instr& in = c.code[i];
    switch (in.op) {
      case SymOp::kConst: out[i] = in.value; break;
      case SymOp::kVar: out[i] = model[in.var]; break;
      case SymOp::kNeg: out[i] = lang::wrapping_neg(out[in.a]); break;
      case SymOp::kAdd: out[i] = lang::wrapping_add(out[in.a], out[in.b]); break;
      case SymOp::kSub: out[i] = lang::wrapping_sub(out[in.a], out[in.b]); break;
      case SymOp::kMul: out[i] = lang::wrapping_mul(out[in.a], out[in.b]); break;
      case SymOp::kDiv: out[i] = lang::wrapping_div(out[in.a], out[in.b]); break;
      case SymOp::kMod: out[i] = lang::wrapping_mod(out[in.a], out[in.b]); break;
    }
  }
}

bool all_hold(const Compiled& c, std::span<const std::int32_t> model, std::vector<std::int32_t>& scratch) {
  eval_all(c, model, scratch);
  for (const auto& k : c.cons)
    if (!holds(k.rel, scratch[k.lhs], scratch[k.rhs])) return false;
  return true;
}

bool Propagator::narrow(int i, Interval to, bool& changed) {
  Interval& r = range_[i];
  const std::uint64_t before = r.size();
  if (to.lo > r.lo) {
    r.lo = to.lo;
    changed = true;
  }
  if (to.hi < r.hi) {
    r.hi = to.hi;
    changed = true;
  }
  if (r.empty()) return false;
  // Creeping by a few values per round is not worth another round.
  const std::uint64_t after = r.size();
  if (after < before && (after <= 1 || before - after > before / 64)) significant_ = true;
  return true;
}

bool Propagator::forward(int i, bool& changed) {
  const Instr& in = c_.code[i];
  if (in.op == SymOp::kConst || in.op == SymOp::kVar) return true;
  const Interval a = range_[in.a];
  const Interval b = in.b >= 0 ? range_[in.b] : Interval{};
  Interval r;
  bool exact = true;
  switch (in.op) {
    case SymOp::kNeg: r = {-a.hi, -a.lo}; break;
    case SymOp::kAdd: r = {a.lo + b.lo, a.hi + b.hi}; break;
    case SymOp::kSub: r = {a.lo - b.hi, a.hi - b.lo}; break;
    case SymOp::kMul: {
      std::int64_t p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
      r = {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
      break;
    }
    case SymOp::kDiv: {
      std::int64_t d = in.b >= 0 ? b.lo : 1;
      r = d > 0 ? Interval{a.lo / d, a.hi / d} : Interval{a.hi / d, a.lo / d};
      break;
    }
    case SymOp::kMod: {
      std::int64_t m = b.lo < 0 ? -b.lo : b.lo;
      if (a.lo >= 0) {
        r = a.hi < m ? a : Interval{0, m - 1};
      } else if (a.hi <= 0) {
        r = a.lo > -m ? a : Interval{-(m - 1), 0};
      } else {
        r = {std::max(a.lo, -(m - 1)), std::min(a.hi, m - 1)};
      }
      exact = false;
      break;
    }
    default: break;
  }
  offset_[i] = 0;
  if (!fits(r)) {
    // A range inside one 2^32 window maps onto int32 by a fixed shift.
    constexpr std::int64_t kWindow = std::int64_t{1} << 32;
    std::int64_t wlo = floor_div(r.lo - kMin, kWindow), whi = floor_div(r.hi - kMin, kWindow);
    if (exact && wlo == whi) {
      offset_[i] = wlo * kWindow;
      r = {r.lo - offset_[i], r.hi - offset_[i]};
    } else {
      r = Interval{};
      exact = false;
    }
  }
  exact_[i] = exact;
  return narrow(i, r, changed);
}

bool Propagator::backward(int i, bool& changed) {
  const Instr& in = c_.code[i];
  if (!exact_[i]) return true;
  const Interval r{range_[i].lo + offset_[i], range_[i].hi + offset_[i]};
  switch (in.op) {
    case SymOp::kNeg:
      return narrow(in.a, {-r.hi, -r.lo}, changed);
    case SymOp::kAdd: {
      const Interval a = range_[in.a], b = range_[in.b];
      return narrow(in.a, {r.lo - b.hi, r.hi - b.lo}, changed) &&
             narrow(in.b, {r.lo - a.hi, r.hi - a.lo}, changed);
    }
    case SymOp::kSub: {
      const Interval a = range_[in.a], b = range_[in.b];
      return narrow(in.a, {r.lo + b.lo, r.hi + b.hi}, changed) &&
             narrow(in.b, {a.lo - r.hi, a.hi - r.lo}, changed);
    }
    case SymOp::kMul: {
      for (int side = 0; side < 2; ++side) {
        int self = side == 0 ? in.a : in.b;
        int other = side == 0 ? in.b : in.a;
        const Interval o = range_[other];
        if (o.singleton() && o.lo != 0) {
          std::int64_t k = o.lo;
          Interval t = k > 0 ? Interval{ceil_div(r.lo, k), floor_div(r.hi, k)}
                             : Interval{ceil_div(r.hi, k), floor_div(r.lo, k)};
          if (!narrow(self, t, changed)) return false;
        } else if (!r.contains(0)) {
          // A nonzero product needs nonzero factors.
          Interval s = range_[self];
          if (s.lo == 0 && !narrow(self, {1, s.hi}, changed)) return false;
          s = range_[self];
          if (s.hi == 0 && !narrow(self, {s.lo, -1}, changed)) return false;
        }
      }
      return true;
    }
    case SymOp::kDiv: {
      std::int64_t d = range_[in.b].lo;
      Interval pre = d > 0 ? div_preimage(r, d) : div_preimage({-r.hi, -r.lo}, -d);
      return narrow(in.a, pre, changed);
    }
    default:
      return true;
  }
}

bool Propagator::refine(const CompiledConstraint& k, bool& changed) {
  const Interval l = range_[k.lhs], r = range_[k.rhs];
  switch (k.rel) {
    case Rel::kLt:
      return narrow(k.lhs, {kMin, r.hi - 1}, changed) && narrow(k.rhs, {l.lo + 1, kMax}, changed);
    case Rel::kLe:
      return narrow(k.lhs, {kMin, r.hi}, changed) && narrow(k.rhs, {l.lo, kMax}, changed);
    case Rel::kGt:
      return narrow(k.lhs, {r.lo + 1, kMax}, changed) && narrow(k.rhs, {kMin, l.hi - 1}, changed);
    case Rel::kGe:
      return narrow(k.lhs, {r.lo, kMax}, changed) && narrow(k.rhs, {kMin, l.hi}, changed);
    case Rel::kEq:
      return narrow(k.lhs, r, changed) && narrow(k.rhs, l, changed);
    case Rel::kNe: {
      auto trim = [&](int self, const Interval& other) {
        if (!other.singleton()) return true;
        Interval s = range_[self];
        if (s.lo == other.lo) ++s.lo;
        if (s.hi == other.lo) --s.hi;
        return narrow(self, s, changed);
      };
      return trim(k.lhs, r) && trim(k.rhs, l);
    }
  }
  return true;
}

bool Propagator::run(std::vector<Interval>& domains) {
  const int n = static_cast<int>(c_.code.size());
  range_.assign(n, Interval{});
  exact_.assign(n, 0);
  offset_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const Instr& in = c_.code[i];
    if (in.op == SymOp::kConst) range_[i] = {in.value, in.value};
    if (in.op == SymOp::kVar) range_[i] = domains[in.var];
    if (range_[i].empty()) return false;
  }
  bool ok = true;
  for (int round = 0; round < max_rounds_ && ok; ++round) {
    bool changed = false;
    significant_ = round == 0;
    for (int i = 0; i < n && ok; ++i) ok = forward(i, changed);
    for (const auto& k : c_.cons) {
      if (!ok) break;
      ok = refine(k, changed);
    }
    for (int i = n - 1; i >= 0 && ok; --i) ok = backward(i, changed);
    if (!changed || !significant_) break;
  }
  if (!ok) return false;
  for (std::size_t v = 0; v < c_.var_instr.size(); ++v)
    if (c_.var_instr[v] >= 0) domains[v] = range_[c_.var_instr[v]];
  return true;
}

}  // namespace testforge::solver::detail
