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

#include "testforge/seqgen/seqgen.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "testforge/concolic/test_case.hpp"
#include "testforge/lang/inputs.hpp"

namespace testforge::seqgen {
namespace {

using lang::Value;

const lang::FunctionDef& function_or_throw(const lang::Program& program, const std::string& fn) {
  const lang::FunctionDef* def = program.find_function(fn);
  if (!def) throw std::invalid_argument("unknown function '" + fn + "'");
  return *def;
}

void validate(const lang::Program& program, const ApiSpec& api) {
  if (!program.find_record(api.state)) throw std::invalid_argument("unknown state record '" + api.state + "'");
  const auto state = lang::Type::Record(api.state);
  const auto& inv = function_or_throw(program, api.invariant);
  if (inv.params.size() != 1 || inv.params[0].type != state || inv.return_type != lang::Type::Bool())
    throw std::invalid_argument("invariant '" + api.invariant + "' must map " + api.state + " to bool");
  if (!api.init.empty()) {
    const auto& init = function_or_throw(program, api.init);
    if (!init.params.empty() || init.return_type != state)
      throw std::invalid_argument("constructor '" + api.init + "' must take nothing and return " + api.state);
  }
  if (api.operations.empty()) throw std::invalid_argument("API has no operations");
  for (const auto& op : api.operations) {
    const auto& def = function_or_throw(program, op.function);
    if (def.params.empty() || def.params[0].type != state)
      throw std::invalid_argument("operation '" + op.function + "' must take the " + api.state + " first");
    for (std::size_t i = 1; i < def.params.size(); ++i) {
      auto k = def.params[i].type.kind;
      if (k != lang::TypeKind::kInt && k != lang::TypeKind::kBool)
        throw std::invalid_argument("operation '" + op.function + "' takes a non-scalar argument");
    }
    if (!op.args.empty() && op.args.size() + 1 != def.params.size())
      throw std::invalid_argument("operation '" + op.function + "' has " + std::to_string(def.params.size() - 1) +
                                  " arguments, got " + std::to_string(op.args.size()) + " domains");
  }
}

SequenceStatus from_verdict(concolic::Verdict v) {
  switch (v) {
    case concolic::Verdict::kPass: return SequenceStatus::kOk;
    case concolic::Verdict::kContractViolation: return SequenceStatus::kContractViolation;
    case concolic::Verdict::kCheckViolation: return SequenceStatus::kCheckViolation;
    case concolic::Verdict::kRuntimeError: return SequenceStatus::kRuntimeError;
    case concolic::Verdict::kBoundExceeded: return SequenceStatus::kBoundExceeded;
  }
  return SequenceStatus::kOk;
}

bool invariant_holds(const lang::Program& program, const ApiSpec& api, const heapgen::Structure& s,
                     const lang::ExecOptions& exec) {
  const Value arg[] = {Value::Handle(s.root)};
  auto r = lang::eval_call(program, api.invariant, arg, s.heap, exec);
  return r.outcome.kind == lang::OutcomeKind::kReturned && r.outcome.value == Value::Bool(true);
}

heapgen::Structure initial_state(const lang::Program& program, const ApiSpec& api, const lang::ExecOptions& exec) {
  heapgen::Structure s;
  if (api.init.empty()) {
    s.root = lang::allocate_default(program, s.heap, api.state);
    return s;
  }
  auto r = lang::eval_call(program, api.init, {}, {}, exec);
  if (r.outcome.kind != lang::OutcomeKind::kReturned || !r.outcome.value.is_handle())
    throw std::invalid_argument("constructor '" + api.init + "' did not return a state: " + lang::describe(r.outcome));
  s.heap = std::move(r.heap);
  s.root = r.outcome.value.handle();
  return s;
}

struct Step {
  heapgen::Structure post;
  SequenceStatus status;
};

// Nothing when the call's requires clause rejects the state.
std::optional<Step> apply(const lang::Program& program, const ApiSpec& api, const heapgen::Structure& state,
                          const Call& call, const lang::ExecOptions& exec) {
  lang::CallInput in{{Value::Handle(state.root)}, state.heap};
  in.args.insert(in.args.end(), call.args.begin(), call.args.end());
  if (program.find_function(call.op)->requires_clause) {
    auto pre = lang::eval_contract(program, call.op, lang::ContractKind::kRequires, in.args, in.heap, Value::Void(), exec);
    if (!pre.holds.value_or(false)) return std::nullopt;
  }
  auto r = lang::eval_call(program, call.op, in.args, in.heap, exec);
  Step step{{std::move(r.heap), state.root, {}}, from_verdict(concolic::classify(program, call.op, in, r, exec))};
  if (step.status == SequenceStatus::kOk && !invariant_holds(program, api, step.post, exec))
    step.status = SequenceStatus::kInvariantViolated;
  return step;
}

std::string value_text(const Value& v) {
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  return std::to_string(v.as_int());
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_string(const Call& call) {
  std::string out = call.op + "(";
  for (std::size_t i = 0; i < call.args.size(); ++i) out += (i ? ", " : "") + value_text(call.args[i]);
  return out + ")";
}

std::string_view to_string(SequenceStatus s) {
  switch (s) {
    case SequenceStatus::kOk: return "Ok";
    case SequenceStatus::kInvariantViolated: return "InvariantViolated";
    case SequenceStatus::kContractViolation: return "ContractViolation";
    case SequenceStatus::kCheckViolation: return "CheckViolation";
    case SequenceStatus::kRuntimeError: return "RuntimeError";
    case SequenceStatus::kBoundExceeded: return "BoundExceeded";
  }
  return "?";
}

std::string to_string(const Sequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.calls.size(); ++i) out += (i ? "; " : "") + to_string(seq.calls[i]);
  return out;
}

std::vector<Sequence> SequenceExploration::failures() const {
  std::vector<Sequence> out;
  for (const auto& s : sequences)
    if (s.failing()) out.push_back(s);
  return out;
}

std::vector<std::vector<Value>> argument_tuples(const lang::Program& program, const Operation& op,
                                                std::size_t arg_budget, std::uint64_t seed) {
  const auto& def = function_or_throw(program, op.function);
  randgen::Domains domains = op.args;
  if (domains.empty())
    for (std::size_t i = 1; i < def.params.size(); ++i)
      domains.push_back(def.params[i].type.kind == lang::TypeKind::kBool ? randgen::Domain::Bool()
                                                                          : randgen::Domain::Int(INT32_MIN, INT32_MAX));
  if (domains.empty()) return {{}};
  std::vector<std::vector<Value>> out;
  auto add = [&](std::vector<Value> t) {
    if (out.size() < arg_budget && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
  };
  for (std::size_t k = 0; k < randgen::kBoundarySamples; ++k) {
    std::vector<Value> t;
    for (const auto& d : domains) {
      if (d.kind == randgen::DomainKind::kBool) {
        t.push_back(Value::Bool(k % 2 == 1));
      } else {
        auto bv = randgen::boundary_values(d.lo, d.hi);
        t.push_back(Value::Int(bv[k % bv.size()]));
      }
    }
    add(std::move(t));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; out.size() < arg_budget && attempt < 100 * arg_budget; ++attempt) {
    std::vector<Value> t;
    for (const auto& d : domains)
      t.push_back(d.kind == randgen::DomainKind::kBool ? Value::Bool((rng() >> 63) != 0)
                                                        : Value::Int(randgen::uniform_int(rng, d.lo, d.hi)));
    add(std::move(t));
  }
  return out;
}

SequenceExploration explore_sequences(const lang::Program& program, const ApiSpec& api,
                                      const SequenceOptions& options) {
  validate(program, api);
  SequenceExploration out;
  auto& g = out.graph;
  std::map<std::pair<SequenceStatus, std::string>, std::size_t> index;
  auto node_for = [&](heapgen::Structure s, SequenceStatus status) {
    std::string key = heapgen::canonical_form(s);
    auto [it, fresh] = index.emplace(std::pair{status, key}, g.nodes.size());
    if (fresh) g.nodes.push_back({std::move(key), std::move(s), status});
    return std::pair{it->second, fresh};
  };

  heapgen::Structure init = initial_state(program, api, options.exec);
  if (!invariant_holds(program, api, init, options.exec))
    throw std::invalid_argument("initial state violates invariant '" + api.invariant + "'");
  g.initial = node_for(std::move(init), SequenceStatus::kOk).first;

  std::vector<std::vector<std::vector<Value>>> tuples;
  for (std::size_t i = 0; i < api.operations.size(); ++i)
    tuples.push_back(argument_tuples(program, api.operations[i], options.arg_budget,
                                     options.seed + 0x9E3779B97F4A7C15ull * (i + 1)));

  std::deque<std::pair<std::size_t, std::vector<Call>>> frontier;
  frontier.emplace_back(g.initial, std::vector<Call>{});
  while (!frontier.empty()) {
    auto [src, prefix] = std::move(frontier.front());
    frontier.pop_front();
    if (prefix.size() >= options.max_len) continue;
    for (std::size_t i = 0; i < api.operations.size(); ++i)
      for (const auto& args : tuples[i]) {
        Call call{api.operations[i].function, args};
        auto step = apply(program, api, g.nodes[src].state, call, options.exec);
        if (!step) continue;
        auto [dst, fresh] = node_for(std::move(step->post), step->status);
        g.edges.push_back({src, call, dst});
        Sequence seq{prefix, step->status, dst};
        seq.calls.push_back(std::move(call));
        if (fresh && !seq.failing()) frontier.emplace_back(dst, seq.calls);
        out.sequences.push_back(std::move(seq));
      }
  }
  return out;
}

Replay replay(const lang::Program& program, const ApiSpec& api, const std::vector<Call>& calls,
              const lang::ExecOptions& exec) {
  validate(program, api);
  Replay r{initial_state(program, api, exec), SequenceStatus::kOk};
  for (const auto& call : calls) {
    auto step = apply(program, api, r.state, call, exec);
    if (!step) throw std::invalid_argument("requires of " + to_string(call) + " does not hold during replay");
    r.state = std::move(step->post);
    r.status = step->status;
    if (r.status != SequenceStatus::kOk) break;
  }
  return r;
}

std::string graph_to_dot(const StateGraph& graph) {
  std::ostringstream out;
  out << "digraph states {\n  node [shape=ellipse];\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    out << "  s" << i << " [label=\"s" << i;
    if (i == graph.initial) out << " (initial)";
    if (graph.nodes[i].status != SequenceStatus::kOk)
      out << "\\n" << to_string(graph.nodes[i].status) << "\", peripheries=2, color=red];\n";
    else
      out << "\"];\n";
  }
  for (const auto& e : graph.edges)
    out << "  s" << e.source << " -> s" << e.target << " [label=\"" << dot_escape(to_string(e.call)) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace testforge::seqgen
