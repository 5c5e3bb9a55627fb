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

#include "testforge/lang/ast.hpp"

#include <algorithm>
#include <functional>

namespace testforge::lang {

std::string Type::to_string() const {
  switch (kind) {
    case TypeKind::kInt:
      return "int";
    case TypeKind::kBool:
      return "bool";
    case TypeKind::kRecord:
      return record;
    case TypeKind::kVoid:
      return "void";
    case TypeKind::kNull:
      return "null";
    case TypeKind::kError:
      return "<error>";
  }
  return "?";
}

std::string_view to_string(UnaryOp op) { return op == UnaryOp::kNeg ? "-" : "!"; }

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

bool is_relational(BinaryOp op) { return op >= BinaryOp::kLt && op <= BinaryOp::kNe; }
bool is_arithmetic(BinaryOp op) { return op <= BinaryOp::kMod; }
bool is_logical(BinaryOp op) { return op == BinaryOp::kAnd || op == BinaryOp::kOr; }

int RecordDecl::field_index(std::string_view field) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == field) return static_cast<int>(i);
  }
  return -1;
}

const RecordDecl* Program::find_record(std::string_view name) const {
  int i = record_index(name);
  return i < 0 ? nullptr : &records[static_cast<std::size_t>(i)];
}

int Program::record_index(std::string_view name) const {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

const FunctionDef* Program::find_function(std::string_view name) const {
  int i = function_index(name);
  return i < 0 ? nullptr : &functions[static_cast<std::size_t>(i)];
}

int Program::function_index(std::string_view name) const {
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (functions[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

void collect_calls(const Expr* e, std::vector<int>& out) {
  if (e == nullptr) return;
  if (e->kind == Expr::Kind::kCall && e->callee >= 0) out.push_back(e->callee);
  for (const auto& op : e->operands) collect_calls(op.get(), out);
}

void collect_calls(const Stmt* s, std::vector<int>& out) {
  if (s == nullptr) return;
  collect_calls(s->target.get(), out);
  collect_calls(s->value.get(), out);
  for (const auto& b : s->body) collect_calls(b.get(), out);
}

}  // namespace

std::vector<int> Program::reachable_functions(int fn) const {
  std::vector<bool> seen(functions.size(), false);
  std::vector<int> stack{fn};
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    if (f < 0 || static_cast<std::size_t>(f) >= functions.size() || seen[static_cast<std::size_t>(f)]) continue;
    seen[static_cast<std::size_t>(f)] = true;
    std::vector<int> callees;
    collect_calls(functions[static_cast<std::size_t>(f)].body.get(), callees);
    stack.insert(stack.end(), callees.begin(), callees.end());
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

template <typename T>
bool ptr_equal(const std::unique_ptr<T>& a, const std::unique_ptr<T>& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.int_value != b.int_value || a.bool_value != b.bool_value || a.name != b.name) {
    return false;
  }
  if (a.kind == Expr::Kind::kUnary && a.unary_op != b.unary_op) return false;
  if (a.kind == Expr::Kind::kBinary && a.binary_op != b.binary_op) return false;
  if (a.operands.size() != b.operands.size()) return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i) {
    if (!ptr_equal(a.operands[i], b.operands[i])) return false;
  }
  return true;
}

bool structurally_equal(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name || a.decl_type != b.decl_type) return false;
  if (!ptr_equal(a.target, b.target) || !ptr_equal(a.value, b.value)) return false;
  if (a.body.size() != b.body.size()) return false;
  for (std::size_t i = 0; i < a.body.size(); ++i) {
    if (!ptr_equal(a.body[i], b.body[i])) return false;
  }
  return true;
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.records.size() != b.records.size() || a.functions.size() != b.functions.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& ra = a.records[i];
    const auto& rb = b.records[i];
    if (ra.name != rb.name || ra.fields.size() != rb.fields.size()) return false;
    for (std::size_t j = 0; j < ra.fields.size(); ++j) {
      if (ra.fields[j].name != rb.fields[j].name || ra.fields[j].type != rb.fields[j].type) return false;
    }
  }
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& fa = a.functions[i];
    const auto& fb = b.functions[i];
    if (fa.name != fb.name || fa.return_type != fb.return_type || fa.params.size() != fb.params.size()) {
      return false;
    }
    for (std::size_t j = 0; j < fa.params.size(); ++j) {
      if (fa.params[j].name != fb.params[j].name || fa.params[j].type != fb.params[j].type) return false;
    }
    if (!ptr_equal(fa.requires_clause, fb.requires_clause) || !ptr_equal(fa.ensures_clause, fb.ensures_clause) ||
        !ptr_equal(fa.body, fb.body)) {
      return false;
    }
  }
  return true;
}

}  // namespace testforge::lang
