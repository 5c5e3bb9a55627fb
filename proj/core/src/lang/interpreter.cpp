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

#include "testforge/lang/interpreter.hpp"

#include <algorithm>
#include <stdexcept>

namespace testforge::lang {

std::string to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kReturned: return "returned";
    case OutcomeKind::kCheckViolated: return "check-violated";
    case OutcomeKind::kRuntimeError: return "runtime-error";
    case OutcomeKind::kStepBoundExceeded: return "bound-exceeded";
  }
  return "?";
}

std::string to_string(RuntimeErrorKind kind) {
  switch (kind) {
    case RuntimeErrorKind::kNone: return "none";
    case RuntimeErrorKind::kDivByZero: return "div-by-zero";
    case RuntimeErrorKind::kNullDereference: return "null-dereference";
  }
  return "?";
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kNone: return "none";
    case BoundKind::kSteps: return "steps";
    case BoundKind::kBranches: return "branches";
    case BoundKind::kCallDepth: return "call-depth";
  }
  return "?";
}

std::string describe(const Outcome& o) {
  switch (o.kind) {
    case OutcomeKind::kReturned:
      return "returned " + o.value.to_string();
    case OutcomeKind::kCheckViolated:
      return "check violated at node " + std::to_string(o.location);
    case OutcomeKind::kRuntimeError:
      return to_string(o.error) + " at node " + std::to_string(o.location);
    case OutcomeKind::kStepBoundExceeded:
      return "path bounds exceeded (" + to_string(o.bound) + ")";
  }
  return "?";
}

bool ExecutionResult::any_check_failed() const {
  return std::any_of(trace.events.begin(), trace.events.end(),
                     [](const TraceEvent& e) { return e.kind == EventKind::kCheck && !e.value; });
}

std::optional<std::string> check_arguments(const Program& program, const FunctionDef& fn,
                                           std::span<const Value> args, const Heap& heap) {
  if (args.size() != fn.params.size()) {
    return "function '" + fn.name + "' expects " + std::to_string(fn.params.size()) + " argument(s), got " +
           std::to_string(args.size());
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    const Type& t = fn.params[i].type;
    const Value& v = args[i];
    bool ok = false;
    switch (t.kind) {
      case TypeKind::kInt:
        ok = v.is_int();
        break;
      case TypeKind::kBool:
        ok = v.is_bool();
        break;
      case TypeKind::kRecord:
        ok = v.is_null() || (v.is_handle() && heap.contains(v.handle()) && heap.at(v.handle()).record == t.record);
        break;
      default:
        break;
    }
    if (!ok) {
      return "argument '" + fn.params[i].name + "' of '" + fn.name + "' expects " + t.to_string() + ", got " +
             v.to_string();
    }
  }
  (void)program;
  return std::nullopt;
}

namespace {

struct Abort {
  Outcome outcome;
};

struct Slot {
  Value value;
  ShadowId shadow = kNoShadow;
};

struct Frame {
  std::vector<Slot> slots;
  Slot result;  // return value; also the `result` symbol of ensures
};

Value default_value(const Type& t) {
  switch (t.kind) {
    case TypeKind::kInt: return Value::Int(0);
    case TypeKind::kBool: return Value::Bool(false);
    case TypeKind::kRecord: return Value::Null();
    default: return Value::Void();
  }
}

class Machine {
 public:
  Machine(const Program& p, const ExecOptions& opt, ExecutionObserver* obs, Heap heap, bool record)
      : p_(p), opt_(opt), obs_(obs), heap_(std::move(heap)), record_(record) {
    if (record_) stmt_seen_.assign(p_.nodes.size(), false);
  }

  void seed_field_shadows(const InputShadows* shadows) {
    if (shadows != nullptr) field_shadows_ = shadows->fields;
  }

  Slot call(const FunctionDef& fn, std::vector<Slot> args) {
    if (++depth_ > opt_.max_call_depth) {
      throw Abort{{OutcomeKind::kStepBoundExceeded, {}, fn.body->id, RuntimeErrorKind::kNone, BoundKind::kCallDepth}};
    }
    Frame frame;
    frame.slots.resize(static_cast<std::size_t>(std::max<int>(fn.num_slots, static_cast<int>(args.size()))));
    for (std::size_t i = 0; i < args.size(); ++i) frame.slots[i] = args[i];
    frame.result.value = Value::Void();
    exec(*fn.body, frame);
    --depth_;
    return frame.result;
  }

  Slot eval_in(const Expr& e, Frame& frame) { return eval(e, frame); }

  Trace take_trace() {
    Trace t;
    t.events = std::move(events_);
    for (std::size_t i = 0; i < stmt_seen_.size(); ++i) {
      if (stmt_seen_[i]) t.statements.push_back(static_cast<NodeId>(i));
    }
    return t;
  }

  Heap& heap() { return heap_; }
  std::uint64_t steps() const { return steps_; }

 private:
  enum class Flow { kNormal, kReturn };

  void tick(NodeId where) {
    if (++steps_ > opt_.step_budget) {
      throw Abort{{OutcomeKind::kStepBoundExceeded, {}, where, RuntimeErrorKind::kNone, BoundKind::kSteps}};
    }
  }

  void decide(NodeId where, DecisionKind kind, bool taken, ShadowId shadow) {
    if (!record_) {
      if (obs_ != nullptr) obs_->on_decision(where, kind, taken, shadow);
      return;
    }
    if (opt_.branch_budget != 0 && events_.size() >= opt_.branch_budget) {
      throw Abort{{OutcomeKind::kStepBoundExceeded, {}, where, RuntimeErrorKind::kNone, BoundKind::kBranches}};
    }
    events_.push_back({kind == DecisionKind::kCheck ? EventKind::kCheck : EventKind::kBranch, where, taken});
    if (obs_ != nullptr) obs_->on_decision(where, kind, taken, shadow);
  }

  [[noreturn]] void runtime_error(RuntimeErrorKind kind, NodeId where) {
    throw Abort{{OutcomeKind::kRuntimeError, {}, where, kind, BoundKind::kNone}};
  }

  ObjectId deref(const Slot& obj, NodeId where) {
    if (!obj.value.is_handle()) runtime_error(RuntimeErrorKind::kNullDereference, where);
    return obj.value.handle();
  }

  Flow exec(const Stmt& s, Frame& f) {
    tick(s.id);
    if (record_) stmt_seen_[static_cast<std::size_t>(s.id)] = true;
    switch (s.kind) {
      case Stmt::Kind::kBlock:
        for (const auto& c : s.body) {
          if (exec(*c, f) == Flow::kReturn) return Flow::kReturn;
        }
        return Flow::kNormal;
      case Stmt::Kind::kLocal:
        f.slots[static_cast<std::size_t>(s.slot)] = s.value ? eval(*s.value, f) : Slot{default_value(s.decl_type)};
        return Flow::kNormal;
      case Stmt::Kind::kAssign:
        f.slots[static_cast<std::size_t>(s.slot)] = eval(*s.value, f);
        return Flow::kNormal;
      case Stmt::Kind::kFieldStore: {
        Slot obj = eval(*s.target->operands[0], f);
        Slot v = eval(*s.value, f);
        ObjectId id = deref(obj, s.target->id);
        heap_.at(id).fields[static_cast<std::size_t>(s.target->field_index)] = v.value;
        auto key = std::make_pair(id, s.target->field_index);
        if (v.shadow != kNoShadow) {
          field_shadows_[key] = v.shadow;
        } else {
          field_shadows_.erase(key);
        }
        return Flow::kNormal;
      }
      case Stmt::Kind::kIf: {
        Slot c = eval(*s.value, f);
        bool taken = c.value.as_bool();
        decide(s.id, DecisionKind::kIf, taken, c.shadow);
        if (taken) return exec(*s.body[0], f);
        if (s.body.size() > 1) return exec(*s.body[1], f);
        return Flow::kNormal;
      }
      case Stmt::Kind::kWhile:
        for (;;) {
          Slot c = eval(*s.value, f);
          bool taken = c.value.as_bool();
          decide(s.id, DecisionKind::kWhile, taken, c.shadow);
          if (!taken) return Flow::kNormal;
          if (exec(*s.body[0], f) == Flow::kReturn) return Flow::kReturn;
          tick(s.id);
        }
      case Stmt::Kind::kReturn:
        f.result = s.value ? eval(*s.value, f) : Slot{Value::Void()};
        return Flow::kReturn;
      case Stmt::Kind::kCheck: {
        Slot c = eval(*s.value, f);
        bool held = c.value.as_bool();
        decide(s.id, DecisionKind::kCheck, held, c.shadow);
        if (!held && opt_.strict_checks) {
          throw Abort{{OutcomeKind::kCheckViolated, {}, s.id, RuntimeErrorKind::kNone, BoundKind::kNone}};
        }
        return Flow::kNormal;
      }
      case Stmt::Kind::kExprStmt:
        eval(*s.value, f);
        return Flow::kNormal;
    }
    return Flow::kNormal;
  }

  Slot eval(const Expr& e, Frame& f) {
    switch (e.kind) {
      case Expr::Kind::kIntLit:
        return {Value::Int(e.int_value)};
      case Expr::Kind::kBoolLit:
        return {Value::Bool(e.bool_value)};
      case Expr::Kind::kNull:
        return {Value::Null()};
      case Expr::Kind::kVar:
        return f.slots[static_cast<std::size_t>(e.slot)];
      case Expr::Kind::kResult:
        return f.result;
      case Expr::Kind::kField: {
        Slot obj = eval(*e.operands[0], f);
        ObjectId id = deref(obj, e.id);
        if (obs_ != nullptr) obs_->on_field_read(id, e.field_index);
        Slot out{heap_.at(id).fields[static_cast<std::size_t>(e.field_index)]};
        if (!field_shadows_.empty()) {
          auto it = field_shadows_.find({id, e.field_index});
          if (it != field_shadows_.end()) out.shadow = it->second;
        }
        return out;
      }
      case Expr::Kind::kUnary: {
        Slot a = eval(*e.operands[0], f);
        Value r = e.unary_op == UnaryOp::kNeg ? Value::Int(wrapping_neg(a.value.as_int()))
                                               : Value::Bool(!a.value.as_bool());
        ShadowId s = kNoShadow;
        if (obs_ != nullptr && a.shadow != kNoShadow) s = obs_->on_unary(e.id, e.unary_op, a.value, a.shadow, r);
        return {r, s};
      }
      case Expr::Kind::kBinary:
        return eval_binary(e, f);
      case Expr::Kind::kCall: {
        std::vector<Slot> args;
        args.reserve(e.operands.size());
        for (const auto& a : e.operands) args.push_back(eval(*a, f));
        tick(e.id);
        return call(p_.functions[static_cast<std::size_t>(e.callee)], std::move(args));
      }
      case Expr::Kind::kNew: {
        const RecordDecl* r = p_.find_record(e.name);
        std::vector<Value> fields;
        fields.reserve(r->fields.size());
        for (const auto& fd : r->fields) fields.push_back(default_value(fd.type));
        return {Value::Handle(heap_.allocate(r->name, std::move(fields)))};
      }
    }
    return {};
  }

  Slot eval_binary(const Expr& e, Frame& f) {
    const BinaryOp op = e.binary_op;
    if (is_logical(op)) {
      Slot l = eval(*e.operands[0], f);
      bool lv = l.value.as_bool();
      decide(e.id, DecisionKind::kShortCircuit, lv, l.shadow);
      if (op == BinaryOp::kAnd && !lv) return {Value::Bool(false)};
      if (op == BinaryOp::kOr && lv) return {Value::Bool(true)};
      return eval(*e.operands[1], f);
    }
    Slot l = eval(*e.operands[0], f);
    Slot r = eval(*e.operands[1], f);
    Value out;
    if (is_arithmetic(op)) {
      std::int32_t a = l.value.as_int();
      std::int32_t b = r.value.as_int();
      switch (op) {
        case BinaryOp::kAdd: out = Value::Int(wrapping_add(a, b)); break;
        case BinaryOp::kSub: out = Value::Int(wrapping_sub(a, b)); break;
        case BinaryOp::kMul: out = Value::Int(wrapping_mul(a, b)); break;
        case BinaryOp::kDiv:
        case BinaryOp::kMod:
          if (obs_ != nullptr && r.shadow != kNoShadow) obs_->on_divisor(e.id, r.value, r.shadow);
          if (b == 0) runtime_error(RuntimeErrorKind::kDivByZero, e.id);
          out = Value::Int(op == BinaryOp::kDiv ? wrapping_div(a, b) : wrapping_mod(a, b));
          break;
        default: break;
      }
    } else {
      const Value& a = l.value;
      const Value& b = r.value;
      switch (op) {
        case BinaryOp::kLt: out = Value::Bool(a.as_int() < b.as_int()); break;
        case BinaryOp::kLe: out = Value::Bool(a.as_int() <= b.as_int()); break;
        case BinaryOp::kGt: out = Value::Bool(a.as_int() > b.as_int()); break;
        case BinaryOp::kGe: out = Value::Bool(a.as_int() >= b.as_int()); break;
        case BinaryOp::kEq: out = Value::Bool(a == b); break;
        case BinaryOp::kNe: out = Value::Bool(!(a == b)); break;
        default: break;
      }
    }
    ShadowId s = kNoShadow;
    if (obs_ != nullptr && (l.shadow != kNoShadow || r.shadow != kNoShadow)) {
      s = obs_->on_binary(e.id, op, l.value, l.shadow, r.value, r.shadow, out);
    }
    return {out, s};
  }

  const Program& p_;
  const ExecOptions& opt_;
  ExecutionObserver* obs_;
  Heap heap_;
  bool record_;
  std::map<std::pair<ObjectId, int>, ShadowId> field_shadows_;
  std::vector<TraceEvent> events_;
  std::vector<bool> stmt_seen_;
  std::uint64_t steps_ = 0;
  std::uint32_t depth_ = 0;
};

const FunctionDef& resolve(const Program& program, std::string_view fn) {
  if (!program.checked) throw std::invalid_argument("program has not been typechecked");
  const FunctionDef* def = program.find_function(fn);
  if (def == nullptr) throw std::invalid_argument("unknown function '" + std::string(fn) + "'");
  return *def;
}

std::vector<Slot> make_args(std::span<const Value> args, const InputShadows* shadows) {
  std::vector<Slot> out;
  out.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    ShadowId s = kNoShadow;
    if (shadows != nullptr && i < shadows->args.size()) s = shadows->args[i];
    out.push_back({args[i], s});
  }
  return out;
}

}  // namespace

ExecutionResult eval_call(const Program& program, std::string_view fn, std::span<const Value> args, Heap heap,
                          const ExecOptions& options, ExecutionObserver* observer, const InputShadows* shadows) {
  const FunctionDef& def = resolve(program, fn);
  if (auto err = check_arguments(program, def, args, heap)) throw std::invalid_argument(*err);

  Machine m(program, options, observer, std::move(heap), /*record=*/true);
  m.seed_field_shadows(shadows);
  ExecutionResult result;
  try {
    Slot r = m.call(def, make_args(args, shadows));
    result.outcome.kind = OutcomeKind::kReturned;
    result.outcome.value = r.value;
  } catch (const Abort& a) {
    result.outcome = a.outcome;
  }
  result.trace = m.take_trace();
  result.steps = m.steps();
  result.heap = std::move(m.heap());
  return result;
}

ContractResult eval_contract(const Program& program, std::string_view fn, ContractKind kind,
                             std::span<const Value> args, const Heap& heap, Value result,
                             const ExecOptions& options, ExecutionObserver* observer,
                             const InputShadows* shadows) {
  const FunctionDef& def = resolve(program, fn);
  const Expr* clause = kind == ContractKind::kRequires ? def.requires_clause.get() : def.ensures_clause.get();
  if (clause == nullptr) return {};

  Machine m(program, options, observer, heap, /*record=*/false);
  m.seed_field_shadows(shadows);
  Frame frame;
  frame.slots.resize(static_cast<std::size_t>(std::max<int>(def.num_slots, static_cast<int>(args.size()))));
  auto slots = make_args(args, shadows);
  for (std::size_t i = 0; i < slots.size(); ++i) frame.slots[i] = slots[i];
  frame.result.value = result;
  try {
    Slot v = m.eval_in(*clause, frame);
    return {v.value.as_bool(), v.shadow};
  } catch (const Abort&) {
    return {};
  }
}

}  // namespace testforge::lang
