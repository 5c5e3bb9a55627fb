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

#include "testforge/lang/typecheck.hpp"

#include <map>
#include <set>
#include <string>

namespace testforge::lang {
namespace {

struct Binding {
  int slot = -1;
  Type type;
};

class Checker {
 public:
  explicit Checker(Program& p) : p_(p) {}

  std::vector<Diagnostic> run() {
    for (auto& r : p_.records) {
      std::set<std::string> names;
      for (auto& f : r.fields) {
        if (!names.insert(f.name).second) {
          error(f.loc, "duplicate field '" + f.name + "' in struct '" + r.name + "'");
        }
        check_declared_type(f.type, f.loc, /*allow_void=*/false);
      }
    }
    for (auto& f : p_.functions) check_function(f);
    if (diags_.empty()) p_.checked = true;
    return std::move(diags_);
  }

 private:
  void error(SourceLoc loc, std::string msg) { diags_.push_back({loc, std::move(msg)}); }

  bool check_declared_type(const Type& t, SourceLoc loc, bool allow_void) {
    if (t.kind == TypeKind::kRecord && p_.find_record(t.record) == nullptr) {
      error(loc, "unknown type '" + t.record + "'");
      return false;
    }
    if (t.kind == TypeKind::kVoid && !allow_void) {
      error(loc, "'void' is not a value type");
      return false;
    }
    return true;
  }

  // Whether a value of type `from` may be stored where `to` is expected.
  static bool assignable(const Type& to, const Type& from) {
    if (to.kind == TypeKind::kError || from.kind == TypeKind::kError) return true;
    if (to == from) return true;
    return to.kind == TypeKind::kRecord && from.kind == TypeKind::kNull;
  }

  void check_function(FunctionDef& f) {
    fn_ = &f;
    scopes_.clear();
    scopes_.emplace_back();
    next_slot_ = 0;
    check_declared_type(f.return_type, f.loc, /*allow_void=*/true);
    for (auto& param : f.params) {
      check_declared_type(param.type, param.loc, false);
      if (scopes_.back().count(param.name) != 0) {
        error(param.loc, "duplicate parameter '" + param.name + "'");
      }
      scopes_.back()[param.name] = Binding{next_slot_++, param.type};
    }
    if (f.requires_clause) check_contract(*f.requires_clause, /*allow_result=*/false, "requires");
    if (f.ensures_clause) check_contract(*f.ensures_clause, /*allow_result=*/true, "ensures");
    check_stmt(*f.body);
    if (f.return_type.kind != TypeKind::kVoid && !definitely_returns(*f.body)) {
      error(f.loc, "function '" + f.name + "' may finish without returning a value");
    }
    f.num_slots = max_slot_ > next_slot_ ? max_slot_ : next_slot_;
    max_slot_ = 0;
    fn_ = nullptr;
  }

  void check_contract(Expr& e, bool allow_result, const char* which) {
    in_contract_ = true;
    allow_result_ = allow_result;
    Type t = check_expr(e);
    if (t.kind != TypeKind::kBool && t.kind != TypeKind::kError) {
      error(e.loc, std::string(which) + " clause must be bool, found " + t.to_string());
    }
    in_contract_ = false;
    allow_result_ = false;
  }

  static bool definitely_returns(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::kReturn:
        return true;
      case Stmt::Kind::kBlock:
        for (const auto& c : s.body) {
          if (definitely_returns(*c)) return true;
        }
        return false;
      case Stmt::Kind::kIf:
        return s.body.size() == 2 && definitely_returns(*s.body[0]) && definitely_returns(*s.body[1]);
      default:
        return false;
    }
  }

  const Binding* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  void check_stmt(Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::kBlock: {
        scopes_.emplace_back();
        int saved = next_slot_;
        for (auto& c : s.body) check_stmt(*c);
        if (next_slot_ > max_slot_) max_slot_ = next_slot_;
        next_slot_ = saved;
        scopes_.pop_back();
        return;
      }
      case Stmt::Kind::kLocal: {
        bool ok = check_declared_type(s.decl_type, s.loc, false);
        if (s.value) {
          Type t = check_expr(*s.value);
          if (ok && !assignable(s.decl_type, t)) {
            error(s.value->loc, "type mismatch: cannot initialize '" + s.name + "' of type " +
                                    s.decl_type.to_string() + " with " + t.to_string());
          }
        }
        if (scopes_.back().count(s.name) != 0) {
          error(s.loc, "redeclaration of '" + s.name + "'");
        }
        s.slot = next_slot_++;
        if (next_slot_ > max_slot_) max_slot_ = next_slot_;
        scopes_.back()[s.name] = Binding{s.slot, s.decl_type};
        return;
      }
      case Stmt::Kind::kAssign: {
        Type t = check_expr(*s.value);
        const Binding* b = lookup(s.name);
        if (b == nullptr) {
          error(s.loc, "use of undeclared variable '" + s.name + "'");
          return;
        }
        s.slot = b->slot;
        if (!assignable(b->type, t)) {
          error(s.value->loc, "type mismatch: cannot assign " + t.to_string() + " to '" + s.name + "' of type " +
                                  b->type.to_string());
        }
        return;
      }
      case Stmt::Kind::kFieldStore: {
        Type target = check_expr(*s.target);
        Type t = check_expr(*s.value);
        if (!assignable(target, t)) {
          error(s.value->loc, "type mismatch: cannot store " + t.to_string() + " into field '" + s.target->name +
                                  "' of type " + target.to_string());
        }
        return;
      }
      case Stmt::Kind::kIf:
      case Stmt::Kind::kWhile:
      case Stmt::Kind::kCheck: {
        Type t = check_expr(*s.value);
        if (t.kind != TypeKind::kBool && t.kind != TypeKind::kError) {
          error(s.value->loc, "type mismatch: condition must be bool, found " + t.to_string());
        }
        for (auto& c : s.body) check_scoped(*c);
        return;
      }
      case Stmt::Kind::kReturn: {
        const Type& want = fn_->return_type;
        if (!s.value) {
          if (want.kind != TypeKind::kVoid) error(s.loc, "missing return value");
          return;
        }
        Type t = check_expr(*s.value);
        if (want.kind == TypeKind::kVoid) {
          error(s.value->loc, "void function '" + fn_->name + "' returns a value");
        } else if (!assignable(want, t)) {
          error(s.value->loc, "type mismatch: returning " + t.to_string() + " from function returning " +
                                  want.to_string());
        }
        return;
      }
      case Stmt::Kind::kExprStmt:
        check_expr(*s.value);
        return;
    }
  }

  // Branch bodies get their own scope even when they are not blocks.
  void check_scoped(Stmt& s) {
    scopes_.emplace_back();
    int saved = next_slot_;
    check_stmt(s);
    if (next_slot_ > max_slot_) max_slot_ = next_slot_;
    next_slot_ = saved;
    scopes_.pop_back();
  }

  Type check_expr(Expr& e) {
    e.type = infer(e);
    return e.type;
  }

  Type infer(Expr& e) {
    switch (e.kind) {
      case Expr::Kind::kIntLit:
        return Type::Int();
      case Expr::Kind::kBoolLit:
        return Type::Bool();
      case Expr::Kind::kNull:
        return Type::NullT();
      case Expr::Kind::kResult:
        if (!in_contract_ || !allow_result_) {
          error(e.loc, "'result' may only appear in an ensures clause");
          return Type::Error();
        }
        if (fn_->return_type.kind == TypeKind::kVoid) {
          error(e.loc, "'result' used in void function '" + fn_->name + "'");
          return Type::Error();
        }
        return fn_->return_type;
      case Expr::Kind::kVar: {
        const Binding* b = lookup(e.name);
        if (b == nullptr) {
          error(e.loc, "use of undeclared variable '" + e.name + "'");
          return Type::Error();
        }
        e.slot = b->slot;
        return b->type;
      }
      case Expr::Kind::kField: {
        Type obj = check_expr(*e.operands[0]);
        if (obj.kind == TypeKind::kError) return Type::Error();
        if (obj.kind != TypeKind::kRecord) {
          error(e.loc, "type mismatch: field access '." + e.name + "' on " + obj.to_string());
          return Type::Error();
        }
        const RecordDecl* r = p_.find_record(obj.record);
        int idx = r->field_index(e.name);
        if (idx < 0) {
          error(e.loc, "struct '" + r->name + "' has no field '" + e.name + "'");
          return Type::Error();
        }
        e.field_index = idx;
        return r->fields[static_cast<std::size_t>(idx)].type;
      }
      case Expr::Kind::kUnary: {
        Type t = check_expr(*e.operands[0]);
        Type want = e.unary_op == UnaryOp::kNeg ? Type::Int() : Type::Bool();
        if (t.kind != TypeKind::kError && t != want) {
          error(e.loc, "type mismatch: operator '" + std::string(to_string(e.unary_op)) + "' expects " +
                           want.to_string() + ", found " + t.to_string());
        }
        return want;
      }
      case Expr::Kind::kBinary:
        return infer_binary(e);
      case Expr::Kind::kCall: {
        std::vector<Type> args;
        for (auto& a : e.operands) args.push_back(check_expr(*a));
        int idx = p_.function_index(e.name);
        if (idx < 0) {
          error(e.loc, "call to undefined function '" + e.name + "'");
          return Type::Error();
        }
        e.callee = idx;
        const FunctionDef& callee = p_.functions[static_cast<std::size_t>(idx)];
        if (callee.params.size() != args.size()) {
          error(e.loc, "function '" + e.name + "' expects " + std::to_string(callee.params.size()) +
                           " argument(s), got " + std::to_string(args.size()));
          return callee.return_type;
        }
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (!assignable(callee.params[i].type, args[i])) {
            error(e.operands[i]->loc, "type mismatch: argument " + std::to_string(i + 1) + " of '" + e.name +
                                          "' expects " + callee.params[i].type.to_string() + ", found " +
                                          args[i].to_string());
          }
        }
        return callee.return_type;
      }
      case Expr::Kind::kNew: {
        if (in_contract_) {
          error(e.loc, "allocation is not allowed in a contract");
        }
        if (p_.find_record(e.name) == nullptr) {
          error(e.loc, "unknown type '" + e.name + "'");
          return Type::Error();
        }
        return Type::Record(e.name);
      }
    }
    return Type::Error();
  }

  Type infer_binary(Expr& e) {
    Type l = check_expr(*e.operands[0]);
    Type r = check_expr(*e.operands[1]);
    const bool any_error = l.kind == TypeKind::kError || r.kind == TypeKind::kError;
    const std::string op(to_string(e.binary_op));
    auto mismatch = [&](const std::string& expects) {
      if (!any_error) {
        error(e.loc, "type mismatch: operator '" + op + "' expects " + expects + ", found " + l.to_string() +
                         " and " + r.to_string());
      }
    };
    if (is_arithmetic(e.binary_op)) {
      if (!(l.kind == TypeKind::kInt && r.kind == TypeKind::kInt)) mismatch("int operands");
      return Type::Int();
    }
    if (is_logical(e.binary_op)) {
      if (!(l.kind == TypeKind::kBool && r.kind == TypeKind::kBool)) mismatch("bool operands");
      return Type::Bool();
    }
    if (e.binary_op == BinaryOp::kEq || e.binary_op == BinaryOp::kNe) {
      bool ok = (l.kind == TypeKind::kInt && r.kind == TypeKind::kInt) ||
                (l.kind == TypeKind::kBool && r.kind == TypeKind::kBool) ||
                (l.is_reference() && r.is_reference() &&
                 (l.kind == TypeKind::kNull || r.kind == TypeKind::kNull || l == r));
      if (!ok) mismatch("operands of the same type");
      return Type::Bool();
    }
    if (!(l.kind == TypeKind::kInt && r.kind == TypeKind::kInt)) mismatch("int operands");
    return Type::Bool();
  }

  Program& p_;
  std::vector<Diagnostic> diags_;
  FunctionDef* fn_ = nullptr;
  std::vector<std::map<std::string, Binding>> scopes_;
  int next_slot_ = 0;
  int max_slot_ = 0;
  bool in_contract_ = false;
  bool allow_result_ = false;
};

}  // namespace

std::vector<Diagnostic> typecheck(Program& program) {
  program.checked = false;
  return Checker(program).run();
}

}  // namespace testforge::lang
