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

#include "testforge/solver/solve.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "solver/compiled.hpp"

namespace testforge::solver {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSat: return "sat";
    case SolveStatus::kUnsat: return "unsat";
    case SolveStatus::kUnknown: return "unknown";
  }
  return "?";
}

namespace {

using detail::Compiled;
using detail::Interval;
using detail::Propagator;

constexpr std::uint64_t kScanLimit = 65536;
constexpr std::uint64_t kScanWork = 20'000'000;  // values x instructions per scan
constexpr std::size_t kMaxRoots = 4096;
constexpr std::size_t kMaxDivisorCandidates = 64;

std::int64_t midpoint(const Interval& d) { return (d.lo + d.hi) / 2; }

// Inverse of an odd number modulo 2^32.
std::uint32_t odd_inverse(std::uint32_t a) {
  std::uint32_t x = a;  // correct to 3 bits
  for (int i = 0; i < 5; ++i) x *= 2 - a * x;
  return x;
}

class Search {
 public:
  Search(std::span<const VarDecl> vars, const Compiled& code, const SolveOptions& options)
      : vars_(vars), c_(code), options_(options), prop_(code) {
    model_.assign(vars.size(), 0);
  }

  SolveResult run() {
    std::vector<Interval> dom(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) dom[v] = {vars_[v].lo, vars_[v].hi};
    SolveResult res;
    bool found = dfs(std::move(dom));
    res.nodes = nodes_;
    if (found) {
      res.status = SolveStatus::kSat;
      res.model = model_;
    } else {
      res.status = out_of_budget_ ? SolveStatus::kUnknown : SolveStatus::kUnsat;
    }
    return res;
  }

 private:
  std::optional<std::int32_t> hint(VarId v) const {
    if (static_cast<std::size_t>(v) < options_.hint.size()) return options_.hint[v];
    return std::nullopt;
  }

  bool spend() {
    if (nodes_ >= options_.node_budget) {
      out_of_budget_ = true;
      return false;
    }
    ++nodes_;
    return true;
  }

  // Value for a variable no constraint mentions.
  std::int32_t free_value(VarId v, const Interval& d) const {
    auto h = hint(v);
    if (h && d.contains(*h)) return *h;
    return static_cast<std::int32_t>(std::clamp<std::int64_t>(0, d.lo, d.hi));
  }

  bool finish(const std::vector<Interval>& dom) {
    for (std::size_t v = 0; v < dom.size(); ++v)
      model_[v] = dom[v].singleton() ? static_cast<std::int32_t>(dom[v].lo) : free_value(v, dom[v]);
    return detail::all_hold(c_, model_, scratch_);
  }

  VarId choose(const std::vector<Interval>& dom, int& open) const {
    VarId best = -1;
    open = 0;
    for (std::size_t v = 0; v < dom.size(); ++v) {
      if (c_.cons_of_var[v].empty() || dom[v].singleton()) continue;
      ++open;
      if (best < 0) {
        best = static_cast<VarId>(v);
        continue;
      }
      std::size_t cv = c_.cons_of_var[v].size(), cb = c_.cons_of_var[best].size();
      if (cv > cb || (cv == cb && dom[v].size() < dom[best].size())) best = static_cast<VarId>(v);
    }
    return best;
  }

  bool dfs(std::vector<Interval> dom) {
    if (!spend()) return false;
    if (!prop_.run(dom)) return false;
    int open = 0;
    VarId v = choose(dom, open);
    if (v < 0) return finish(dom);
    if (open == 1 && dom[v].size() <= kScanLimit && dom[v].size() * (c_.code.size() + 1) <= kScanWork)
      return scan(v, dom);

    std::vector<std::int64_t> cand;
    bool complete = false;
    if (auto h = hint(v)) cand.push_back(*h);
    divisor_candidates(v, cand);
    if (linear_roots(v, dom, cand)) complete = true;
    if (!complete) {
      cand.push_back(midpoint(dom[v]));
      cand.push_back(dom[v].lo);
      cand.push_back(dom[v].hi);
    }
    std::set<std::int64_t> tried;
    for (std::int64_t x : cand) {
      if (!dom[v].contains(x) || !tried.insert(x).second) continue;
      auto child = dom;
      child[v] = {x, x};
      if (dfs(std::move(child))) return true;
      if (out_of_budget_) return false;
    }
    if (complete) return false;
    // Split what is left around the midpoint; the three probes are excluded.
    std::int64_t mid = midpoint(dom[v]);
    for (Interval half : {Interval{dom[v].lo + 1, mid - 1}, Interval{mid + 1, dom[v].hi - 1}}) {
      if (half.empty()) continue;
      auto child = dom;
      child[v] = half;
      if (dfs(std::move(child))) return true;
      if (out_of_budget_) return false;
    }
    return false;
  }

  // Exhaustive scan of the last open variable, midpoint outward, as one node.
  bool scan(VarId v, std::vector<Interval>& dom) {
    for (std::size_t u = 0; u < dom.size(); ++u)
      model_[u] = dom[u].singleton() ? static_cast<std::int32_t>(dom[u].lo) : free_value(u, dom[u]);
    auto h = hint(v);
    if (h && dom[v].contains(*h)) {
      model_[v] = *h;
      if (detail::all_hold(c_, model_, scratch_)) return true;
    }
    std::int64_t mid = midpoint(dom[v]);
    for (std::int64_t off = 0;; ++off) {
      bool any = false;
      for (std::int64_t x : {mid + off, mid - off - 1}) {
        if (!dom[v].contains(x)) continue;
        any = true;
        model_[v] = static_cast<std::int32_t>(x);
        if (detail::all_hold(c_, model_, scratch_)) return true;
      }
      if (!any) break;
    }
    return false;
  }

  // Divisors of k for constraints shaped `v * e == k` or `k == v * e`.
  void divisor_candidates(VarId v, std::vector<std::int64_t>& out) {
    const auto& ranges = prop_.ranges();
    const int vi = c_.var_instr[v];
    for (int k : c_.cons_of_var[v]) {
      const auto& cc = c_.cons[k];
      if (cc.rel != Rel::kEq) continue;
      for (auto [prod, other] : {std::pair{cc.lhs, cc.rhs}, std::pair{cc.rhs, cc.lhs}}) {
        const auto& in = c_.code[prod];
        if (in.op != SymOp::kMul || (in.a != vi && in.b != vi)) continue;
        if (!ranges[other].singleton()) continue;
        std::int64_t target = ranges[other].lo;
        if (target == 0) {
          out.push_back(0);
          continue;
        }
        std::uint64_t t = target < 0 ? -target : target;
        std::vector<std::int64_t> small, large;
        for (std::uint64_t d = 1; d * d <= t; ++d) {
          if (t % d) continue;
          small.push_back(d);
          if (d != t / d) large.push_back(t / d);
        }
        small.insert(small.end(), large.rbegin(), large.rend());
        std::size_t added = 0;
        for (std::int64_t d : small) {
          out.push_back(d);
          out.push_back(-d);
          if (++added >= kMaxDivisorCandidates) break;
        }
      }
    }
  }

  // For an equality in which v is the only open variable and which is linear
  // in v modulo 2^32, appends its exact roots within the domain and returns
  // true when they are all of them.
  bool linear_roots(VarId v, const std::vector<Interval>& dom, std::vector<std::int64_t>& out) {
    for (int k : c_.cons_of_var[v]) {
      const auto& cc = c_.cons[k];
      if (cc.rel != Rel::kEq) continue;
      bool others_fixed = true;
      for (VarId u : c_.vars_of_con[k])
        if (u != v && !dom[u].singleton()) others_fixed = false;
      if (!others_fixed || !linear_in(v, cc)) continue;

      for (std::size_t u = 0; u < dom.size(); ++u)
        model_[u] = dom[u].singleton() ? static_cast<std::int32_t>(dom[u].lo) : 0;
      auto residual = [&](std::int32_t x) {
        model_[v] = x;
        detail::eval_all(c_, model_, scratch_);
        return static_cast<std::uint32_t>(scratch_[cc.lhs]) - static_cast<std::uint32_t>(scratch_[cc.rhs]);
      };
      std::uint32_t b = residual(0);
      std::uint32_t a = residual(1) - b;
      std::uint32_t c = 0u - b;  // solve a*x == c (mod 2^32)
      if (a == 0) {
        if (c == 0) continue;  // every value satisfies it
        return true;           // none does
      }
      int t = std::countr_zero(a);
      if (t > 0 && (c & ((1u << t) - 1)) != 0) return true;
      std::uint64_t m = std::uint64_t{1} << (32 - t);
      std::uint64_t x0 = (static_cast<std::uint64_t>(c >> t) * odd_inverse(a >> t)) & (m - 1);
      // Solutions are x0 + j*m read as int32; find those within the domain.
      const Interval& d = dom[v];
      std::int64_t base = static_cast<std::int64_t>(x0) - (std::int64_t{1} << 32);  // a representative <= any int32
      std::int64_t first = d.lo + ((((base - d.lo) % static_cast<std::int64_t>(m)) + m) % m);
      if (first > d.hi) return true;
      std::uint64_t count = static_cast<std::uint64_t>(d.hi - first) / m + 1;
      if (count <= kMaxRoots) {
        for (std::uint64_t j = 0; j < count; ++j) out.push_back(first + static_cast<std::int64_t>(j * m));
        return true;
      }
      for (std::uint64_t j = 0; j < 16; ++j) out.push_back(first + static_cast<std::int64_t>(j * m));
    }
    return false;
  }

  // True when both sides use v only through +, -, negation and
  // multiplication by v-free terms.
  bool linear_in(VarId v, const detail::CompiledConstraint& cc) {
    std::vector<char> dep(c_.code.size(), 0);
    int hi = std::max(cc.lhs, cc.rhs);
    for (int i = 0; i <= hi; ++i) {
      const auto& in = c_.code[i];
      if (in.op == SymOp::kVar) {
        dep[i] = in.var == v;
        continue;
      }
      if (in.op == SymOp::kConst) continue;
      bool da = in.a >= 0 && dep[in.a], db = in.b >= 0 && dep[in.b];
      dep[i] = da || db;
      if (!dep[i]) continue;
      switch (in.op) {
        case SymOp::kNeg:
        case SymOp::kAdd:
        case SymOp::kSub:
          break;
        case SymOp::kMul:
          if (da && db) dep[i] = 2;
          break;
        default:
          dep[i] = 2;
      }
      if ((in.a >= 0 && dep[in.a] == 2) || (in.b >= 0 && dep[in.b] == 2)) dep[i] = 2;
    }
    return dep[cc.lhs] != 2 && dep[cc.rhs] != 2;
  }

  std::span<const VarDecl> vars_;
  const Compiled& c_;
  const SolveOptions& options_;
  Propagator prop_;
  std::vector<std::int32_t> model_;
  std::vector<std::int32_t> scratch_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

}  // namespace

SolveResult solve(std::span<const VarDecl> vars, std::span<const Constraint> cs, const SolveOptions& options) {
  for (const auto& v : vars)
    if (v.lo > v.hi) throw std::invalid_argument("empty domain for variable " + v.name);
  Compiled code = detail::compile(cs, vars.size());
  Search search(vars, code, options);
  SolveResult res = search.run();
  if (res.status == SolveStatus::kSat) {
    for (const auto& c : cs)
      if (!holds(c, res.model)) throw std::logic_error("solver model fails " + to_string(c, vars));
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (res.model[v] < vars[v].lo || res.model[v] > vars[v].hi)
        throw std::logic_error("solver model leaves domain of " + vars[v].name);
  }
  return res;
}

}  // namespace testforge::solver
