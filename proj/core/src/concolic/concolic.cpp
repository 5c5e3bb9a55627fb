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

#include "testforge/concolic/concolic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "testforge/solver/solve.hpp"

namespace testforge::concolic {

using lang::ShadowId;
using lang::kNoShadow;
using lang::Value;
using solver::Constraint;
using solver::Rel;
using solver::SymExpr;

namespace {

struct Shadow {
  bool is_constraint = false;
  SymExpr expr;
  Constraint cons;
};

Constraint strip(Constraint c) {
  c.provenance.reset();
  return c;
}

Rel rel_of(lang::BinaryOp op) {
  switch (op) {
    case lang::BinaryOp::kLt: return Rel::kLt;
    case lang::BinaryOp::kLe: return Rel::kLe;
    case lang::BinaryOp::kGt: return Rel::kGt;
    case lang::BinaryOp::kGe: return Rel::kGe;
    case lang::BinaryOp::kEq: return Rel::kEq;
    default: return Rel::kNe;
  }
}

std::int32_t scalar_of(const Value& v) { return v.is_bool() ? (v.as_bool() ? 1 : 0) : v.as_int(); }

// Mirrors the run symbolically. Integers and booleans carry expressions
// (booleans as 0/1); comparisons carry constraints.
class SymbolicObserver : public lang::ExecutionObserver {
 public:
  // `path` is null when evaluating a contract; decisions then go to
  // `contract_decisions` instead.
  explicit SymbolicObserver(PathCondition* path) : path_(path) {}

  ShadowId add(Shadow s) {
    shadows_.push_back(std::move(s));
    return static_cast<ShadowId>(shadows_.size() - 1);
  }
  ShadowId add_expr(SymExpr e) { return add(Shadow{false, std::move(e), {}}); }
  ShadowId add_constraint(Constraint c) { return add(Shadow{true, {}, std::move(c)}); }

  std::optional<SymExpr> as_expr(ShadowId s, const Value& concrete) const {
    if (s == kNoShadow) return SymExpr::constant(scalar_of(concrete));
    if (shadows_[s].is_constraint) return std::nullopt;
    return shadows_[s].expr;
  }

  std::optional<Constraint> as_constraint(ShadowId s) const {
    if (s == kNoShadow) return std::nullopt;
    if (shadows_[s].is_constraint) return shadows_[s].cons;
    return solver::make_constraint(shadows_[s].expr, Rel::kNe, SymExpr::constant(0));
  }

  ShadowId on_unary(lang::NodeId, lang::UnaryOp op, Value, ShadowId a, Value) override {
    if (op == lang::UnaryOp::kNeg) {
      auto e = as_expr(a, Value::Int(0));
      return e ? add_expr(-*e) : kNoShadow;
    }
    const Shadow& s = shadows_[a];
    if (s.is_constraint) return add_constraint(solver::negate(s.cons));
    return add_constraint(solver::make_constraint(s.expr, Rel::kEq, SymExpr::constant(0)));
  }

  ShadowId on_binary(lang::NodeId, lang::BinaryOp op, Value lv, ShadowId ls, Value rv, ShadowId rs,
                     Value) override {
    using lang::BinaryOp;
    auto l = as_expr(ls, lv);
    auto r = as_expr(rs, rv);
    if (lang::is_arithmetic(op)) {
      if (!l || !r) return kNoShadow;
      switch (op) {
        case BinaryOp::kAdd: return add_expr(*l + *r);
        case BinaryOp::kSub: return add_expr(*l - *r);
        case BinaryOp::kMul: return add_expr(*l * *r);
        // The divisor is pinned to its concrete value.
        case BinaryOp::kDiv: return add_expr(*l / SymExpr::constant(rv.as_int()));
        case BinaryOp::kMod: return add_expr(*l % SymExpr::constant(rv.as_int()));
        default: return kNoShadow;
      }
    }
    if (l && r) return add_constraint(solver::make_constraint(*l, rel_of(op), *r));
    // A comparison between a boolean condition and a concrete boolean.
    if ((op == BinaryOp::kEq || op == BinaryOp::kNe) && lv.is_bool()) {
      ShadowId sym = l ? rs : ls;
      const Value& other = l ? lv : rv;
      if ((l ? ls : rs) != kNoShadow) return kNoShadow;
      Constraint c = shadows_[sym].cons;
      bool keep = other.as_bool() == (op == BinaryOp::kEq);
      return add_constraint(keep ? c : solver::negate(c));
    }
    return kNoShadow;
  }

  void on_divisor(lang::NodeId, Value divisor, ShadowId s) override {
    auto e = as_expr(s, divisor);
    if (!e || path_ == nullptr) return;
    path_->pins.emplace_back(events_, solver::make_constraint(*e, Rel::kEq, SymExpr::constant(divisor.as_int())));
  }

  void on_decision(lang::NodeId where, lang::DecisionKind, bool taken, ShadowId s) override {
    auto c = as_constraint(s);
    if (c) {
      Constraint oriented = strip(taken ? *c : solver::negate(*c));
      oriented.provenance = solver::Provenance{where, taken};
      if (path_ != nullptr) {
        path_->entries.push_back({std::move(oriented), where, events_});
      } else {
        contract_decisions.push_back(std::move(oriented));
      }
    }
    if (path_ != nullptr) ++events_;
  }

  std::vector<Constraint> contract_decisions;

 private:
  PathCondition* path_;
  std::vector<Shadow> shadows_;
  std::size_t events_ = 0;
};

// Registers one symbolic variable per scalar slot of the input.
lang::InputShadows seed_shadows(SymbolicObserver& obs, const lang::CallInput& input,
                                const std::vector<lang::ScalarSlot>& slots) {
  lang::InputShadows sh;
  sh.args.assign(input.args.size(), kNoShadow);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    ShadowId id = obs.add_expr(SymExpr::var(static_cast<solver::VarId>(i)));
    if (slots[i].where == lang::ScalarSlot::Where::kArg) {
      sh.args[static_cast<std::size_t>(slots[i].arg)] = id;
    } else {
      sh.fields[{slots[i].object, slots[i].field}] = id;
    }
  }
  return sh;
}

std::vector<std::int32_t> slot_values(const lang::CallInput& input, const std::vector<lang::ScalarSlot>& slots) {
  std::vector<std::int32_t> out;
  out.reserve(slots.size());
  for (const auto& s : slots) out.push_back(scalar_of(lang::read_slot(input, s)));
  return out;
}

const lang::FunctionDef& function_or_throw(const lang::Program& program, std::string_view fn) {
  const lang::FunctionDef* def = program.find_function(fn);
  if (def == nullptr) throw std::invalid_argument("unknown function '" + std::string(fn) + "'");
  return *def;
}

}  // namespace

SymbolicRun execute_symbolic(const lang::Program& program, std::string_view fn, const lang::CallInput& input,
                             const lang::ExecOptions& options) {
  const lang::FunctionDef& def = function_or_throw(program, fn);
  SymbolicRun run;
  run.path.slots = lang::scalar_slots(program, def, input);
  for (const auto& s : run.path.slots)
    run.path.vars.push_back({s.name, s.is_bool ? 0 : INT32_MIN, s.is_bool ? 1 : INT32_MAX});
  SymbolicObserver obs(&run.path);
  lang::InputShadows shadows = seed_shadows(obs, input, run.path.slots);
  run.result = lang::eval_call(program, fn, input.args, input.heap, options, &obs, &shadows);

  auto model = slot_values(input, run.path.slots);
  for (const auto& e : run.path.entries)
    if (!solver::holds(e.constraint, model))
      throw std::logic_error("path constraint does not hold on its input: " +
                             solver::to_string(e.constraint, run.path.vars));
  for (const auto& [pos, c] : run.path.pins)
    if (!solver::holds(c, model)) throw std::logic_error("divisor pin does not hold on its input");
  return run;
}

namespace {

struct RequiresParts {
  std::vector<Constraint> decisions;
  std::optional<Constraint> final;
};

RequiresParts requires_parts(const lang::Program& program, std::string_view fn, const lang::CallInput& input,
                             const PathCondition& shape) {
  const lang::FunctionDef& def = function_or_throw(program, fn);
  if (!def.requires_clause) return {};
  SymbolicObserver obs(nullptr);
  lang::InputShadows shadows = seed_shadows(obs, input, shape.slots);
  auto res = lang::eval_contract(program, fn, lang::ContractKind::kRequires, input.args, input.heap, Value::Void(),
                                 {}, &obs, &shadows);
  RequiresParts out{std::move(obs.contract_decisions), std::nullopt};
  if (auto c = obs.as_constraint(res.shadow)) out.final = strip(*c);
  return out;
}

}  // namespace

std::vector<Constraint> requires_constraints(const lang::Program& program, std::string_view fn,
                                             const lang::CallInput& input, const PathCondition& shape) {
  auto parts = requires_parts(program, fn, input, shape);
  if (parts.final) parts.decisions.push_back(*parts.final);
  return std::move(parts.decisions);
}

// --- frontier ----------------------------------------------------------------

lang::PathSignature NegationTarget::prefix() const {
  lang::PathSignature p(parent->signature.begin(), parent->signature.begin() + static_cast<std::ptrdiff_t>(depth) + 1);
  p.back().value = !p.back().value;
  return p;
}

std::vector<Constraint> NegationTarget::query() const {
  const PathCondition& path = parent->path;
  std::vector<Constraint> q{solver::negate(path.entries[entry].constraint)};
  for (std::size_t i = 0; i < entry; ++i) q.push_back(path.entries[i].constraint);
  for (const auto& [pos, c] : path.pins)
    if (pos <= depth) q.push_back(c);
  q.insert(q.end(), parent->requires_cs.begin(), parent->requires_cs.end());
  return q;
}

void PathTrie::insert(const lang::PathSignature& path) {
  Node* n = &root_;
  for (const auto& e : path) {
    auto& child = n->next[e];
    if (!child) child = std::make_unique<Node>();
    n = child.get();
  }
}

bool PathTrie::covers_prefix(const lang::PathSignature& prefix) const {
  const Node* n = &root_;
  for (const auto& e : prefix) {
    auto it = n->next.find(e);
    if (it == n->next.end()) return false;
    n = it->second.get();
  }
  return true;
}

std::optional<NegationTarget> choose_next(ExplorationState& state) {
  while (!state.frontier.empty()) {
    auto it = state.limits.policy == SearchPolicy::kDepthFirst ? std::prev(state.frontier.end())
                                                               : state.frontier.begin();
    NegationTarget t = std::move(it->second);
    state.frontier.erase(it);
    auto prefix = t.prefix();
    if (state.covered.covers_prefix(prefix) || !state.attempted.insert(prefix).second) continue;
    state.chosen.push_back(std::move(prefix));
    return t;
  }
  return std::nullopt;
}

// --- explore -----------------------------------------------------------------

std::vector<lang::CallInput> default_seeds(const lang::Program& program, std::string_view fn) {
  const lang::FunctionDef& def = function_or_throw(program, fn);
  bool has_record = false;
  lang::CallInput nulls, objects;
  for (const auto& p : def.params) {
    switch (p.type.kind) {
      case lang::TypeKind::kInt:
        nulls.args.push_back(Value::Int(0));
        objects.args.push_back(Value::Int(0));
        break;
      case lang::TypeKind::kBool:
        nulls.args.push_back(Value::Bool(false));
        objects.args.push_back(Value::Bool(false));
        break;
      default:
        has_record = true;
        nulls.args.push_back(Value::Null());
        objects.args.push_back(Value::Handle(lang::allocate_default(program, objects.heap, p.type.record)));
    }
  }
  if (!has_record) return {nulls};
  return {nulls, objects};
}

namespace {

// Keeps the constraints that share variables, transitively, with the last
// one; the others already hold on the parent input, whose values are the
// solver hint.
std::vector<Constraint> slice(const std::vector<Constraint>& q, std::size_t num_vars, std::size_t flipped) {
  std::vector<int> parent(num_vars);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<std::vector<solver::VarId>> vars(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    solver::collect_vars(q[i].lhs, vars[i]);
    solver::collect_vars(q[i].rhs, vars[i]);
    for (std::size_t j = 1; j < vars[i].size(); ++j) parent[find(vars[i][j])] = find(vars[i][0]);
  }
  std::vector<Constraint> out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    bool keep = vars[i].empty() || vars[flipped].empty();
    for (solver::VarId v : vars[i])
      for (solver::VarId w : vars[flipped]) keep = keep || find(v) == find(w);
    if (keep) out.push_back(q[i]);
  }
  return out;
}

bool starts_with(const lang::PathSignature& path, const lang::PathSignature& prefix) {
  return path.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

class Explorer {
 public:
  Explorer(const lang::Program& program, std::string_view fn, const ExploreLimits& limits)
      : program_(program), fn_(fn) {
    out_.state.limits = limits;
    options_.step_budget = limits.step_budget;
    options_.branch_budget = limits.path_budget;
  }

  Exploration run(const std::vector<lang::CallInput>& seeds) {
    for (const auto& seed : seeds) {
      auto input = satisfy_requires(seed);
      if (input) process(*input, nullptr);
    }
    auto& st = out_.state;
    while (st.queries < st.limits.max_queries) {
      auto t = choose_next(st);
      if (!t) break;
      ++st.queries;
      const ParentRun& parent = *t->parent;
      auto q = t->query();
      auto sliced = slice(q, parent.vars.size(), 0);
      auto res = solver::solve(parent.vars, sliced, solve_options(parent));
      if (res.status == solver::SolveStatus::kSat) {
        lang::CallInput next = parent.input;
        for (std::size_t i = 0; i < parent.path.slots.size(); ++i)
          lang::write_slot(next, parent.path.slots[i], res.model[i]);
        auto prefix = t->prefix();
        process(next, &prefix);
      } else if (res.status == solver::SolveStatus::kUnsat) {
        ++st.infeasible;
        if (st.infeasible_log.size() < 1000) st.infeasible_log.push_back(*t);
      } else {
        ++st.unresolved;
      }
    }
    return std::move(out_);
  }

 private:
  solver::SolveOptions solve_options(const ParentRun& parent) const {
    solver::SolveOptions o;
    o.node_budget = out_.state.limits.solver_nodes;
    for (const auto& s : parent.path.slots) o.hint.emplace_back(scalar_of(lang::read_slot(parent.input, s)));
    return o;
  }

  std::vector<solver::VarDecl> domains(const PathCondition& path) const {
    std::vector<solver::VarDecl> vars = path.vars;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (path.slots[i].is_bool) continue;
      vars[i].lo = out_.state.limits.int_lo;
      vars[i].hi = out_.state.limits.int_hi;
    }
    return vars;
  }

  // Returns the seed itself if it satisfies `requires`, a solved variant of
  // it otherwise, or nothing when no variant is found. Short-circuit
  // decisions taken on a failing clause describe the wrong side, so each
  // round only demands the clause's final condition and re-evaluates.
  std::optional<lang::CallInput> satisfy_requires(const lang::CallInput& seed) {
    if (!program_.find_function(fn_)->requires_clause) return seed;
    lang::CallInput cur = seed;
    std::vector<Constraint> wanted;
    for (int round = 0; round < 8; ++round) {
      auto pre = lang::eval_contract(program_, fn_, lang::ContractKind::kRequires, cur.args, cur.heap);
      if (pre.holds.value_or(false)) return cur;
      auto run = execute_symbolic(program_, fn_, cur, options_);
      // A clause cut short by && has no final condition; the decision that
      // cut it must flip instead.
      auto parts = requires_parts(program_, fn_, cur, run.path);
      if (parts.final) wanted.push_back(*parts.final);
      else if (!parts.decisions.empty()) wanted.push_back(strip(solver::negate(parts.decisions.back())));
      else return std::nullopt;
      ParentRun shape{cur, {}, run.path, {}, domains(run.path)};
      auto res = solver::solve(shape.vars, wanted, solve_options(shape));
      if (res.status != solver::SolveStatus::kSat) return std::nullopt;
      for (std::size_t i = 0; i < run.path.slots.size(); ++i) lang::write_slot(cur, run.path.slots[i], res.model[i]);
    }
    return std::nullopt;
  }

  void process(const lang::CallInput& input, const lang::PathSignature* expected) {
    auto& st = out_.state;
    auto run = execute_symbolic(program_, fn_, input, options_);
    const auto& sig = run.result.trace.events;
    if (expected != nullptr && !starts_with(sig, *expected)) ++st.divergences;
    if (st.signatures.count(sig)) {
      ++st.duplicates;
      return;
    }
    st.signatures.insert(sig);
    st.covered.insert(sig);
    ++st.covered_paths;

    TestCase tc;
    tc.function = fn_;
    tc.input = input;
    tc.outcome = run.result.outcome;
    tc.verdict = classify(program_, fn_, input, run.result, options_);
    tc.provenance = "concolic";
    tc.signature = sig;
    if (tc.verdict == Verdict::kBoundExceeded) ++st.bound_exceeded;
    out_.cases.push_back(std::move(tc));

    auto parent = std::make_shared<ParentRun>();
    parent->input = input;
    parent->signature = sig;
    parent->requires_cs = requires_constraints(program_, fn_, input, run.path);
    parent->vars = domains(run.path);
    parent->path = std::move(run.path);
    std::size_t start = expected != nullptr ? expected->size() : 0;
    for (std::size_t i = 0; i < parent->path.entries.size(); ++i) {
      std::size_t depth = parent->path.entries[i].depth;
      if (depth < start) continue;
      NegationTarget t;
      t.parent = parent;
      t.entry = i;
      t.depth = depth;
      t.seq = st.next_seq++;
      st.frontier.emplace(std::pair{depth, t.seq}, std::move(t));
    }
  }

  const lang::Program& program_;
  std::string fn_;
  lang::ExecOptions options_;
  Exploration out_;
};

}  // namespace

Exploration explore(const lang::Program& program, std::string_view fn, const ExploreLimits& limits,
                    const std::vector<lang::CallInput>& seeds) {
  function_or_throw(program, fn);
  Explorer ex(program, fn, limits);
  return ex.run(seeds.empty() ? default_seeds(program, fn) : seeds);
}

}  // namespace testforge::concolic
