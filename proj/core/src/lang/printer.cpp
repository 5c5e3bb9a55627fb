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

#include "testforge/lang/printer.hpp"

#include <sstream>

namespace testforge::lang {
namespace {

void print_expr(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kIntLit:
      os << e.int_value;
      return;
    case Expr::Kind::kBoolLit:
      os << (e.bool_value ? "true" : "false");
      return;
    case Expr::Kind::kNull:
      os << "null";
      return;
    case Expr::Kind::kVar:
      os << e.name;
      return;
    case Expr::Kind::kResult:
      os << "result";
      return;
    case Expr::Kind::kField:
      print_expr(os, *e.operands[0]);
      os << '.' << e.name;
      return;
    case Expr::Kind::kUnary:
      os << to_string(e.unary_op) << '(';
      print_expr(os, *e.operands[0]);
      os << ')';
      return;
    case Expr::Kind::kBinary:
      os << '(';
      print_expr(os, *e.operands[0]);
      os << ' ' << to_string(e.binary_op) << ' ';
      print_expr(os, *e.operands[1]);
      os << ')';
      return;
    case Expr::Kind::kCall:
      os << e.name << '(';
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i > 0) os << ", ";
        print_expr(os, *e.operands[i]);
      }
      os << ')';
      return;
    case Expr::Kind::kNew:
      os << "new " << e.name;
      return;
  }
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void print_stmt(std::ostream& os, const Stmt& s, int depth);

void print_block_body(std::ostream& os, const Stmt& block, int depth) {
  os << "{\n";
  for (const auto& c : block.body) print_stmt(os, *c, depth + 1);
  indent(os, depth);
  os << "}";
}

// Non-block branches print on their own line, one level deeper. Parsed
// programs never nest an else-less if as the then-branch of an if with an
// else, so no dangling-else ambiguity arises.
void print_nested(std::ostream& os, const Stmt& s, int depth) {
  if (s.kind == Stmt::Kind::kBlock) {
    print_block_body(os, s, depth);
  } else {
    os << "\n";
    std::ostringstream inner;
    print_stmt(inner, s, depth + 1);
    std::string text = inner.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    os << text << '\n';
    indent(os, depth);
  }
}

void print_stmt(std::ostream& os, const Stmt& s, int depth) {
  indent(os, depth);
  switch (s.kind) {
    case Stmt::Kind::kBlock:
      print_block_body(os, s, depth);
      os << '\n';
      return;
    case Stmt::Kind::kLocal:
      os << s.decl_type.to_string() << ' ' << s.name;
      if (s.value) {
        os << " = ";
        print_expr(os, *s.value);
      }
      os << ";\n";
      return;
    case Stmt::Kind::kAssign:
      os << s.name << " = ";
      print_expr(os, *s.value);
      os << ";\n";
      return;
    case Stmt::Kind::kFieldStore:
      print_expr(os, *s.target);
      os << " = ";
      print_expr(os, *s.value);
      os << ";\n";
      return;
    case Stmt::Kind::kIf:
      os << "if (";
      print_expr(os, *s.value);
      os << ") ";
      print_nested(os, *s.body[0], depth);
      if (s.body.size() > 1) {
        os << " else ";
        print_nested(os, *s.body[1], depth);
      }
      os << '\n';
      return;
    case Stmt::Kind::kWhile:
      os << "while (";
      print_expr(os, *s.value);
      os << ") ";
      print_nested(os, *s.body[0], depth);
      os << '\n';
      return;
    case Stmt::Kind::kReturn:
      os << "return";
      if (s.value) {
        os << ' ';
        print_expr(os, *s.value);
      }
      os << ";\n";
      return;
    case Stmt::Kind::kCheck:
      os << "check(";
      print_expr(os, *s.value);
      os << ");\n";
      return;
    case Stmt::Kind::kExprStmt:
      print_expr(os, *s.value);
      os << ";\n";
      return;
  }
}

}  // namespace

std::string print(const Expr& expr) {
  std::ostringstream os;
  print_expr(os, expr);
  return os.str();
}

std::string print(const Program& program) {
  std::ostringstream os;
  for (const auto& r : program.records) {
    os << "struct " << r.name << " {\n";
    for (const auto& f : r.fields) os << "  " << f.type.to_string() << ' ' << f.name << ";\n";
    os << "}\n\n";
  }
  for (const auto& f : program.functions) {
    os << f.return_type.to_string() << ' ' << f.name << '(';
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i > 0) os << ", ";
      os << f.params[i].type.to_string() << ' ' << f.params[i].name;
    }
    os << ')';
    if (f.requires_clause) {
      os << "\n  requires ";
      print_expr(os, *f.requires_clause);
    }
    if (f.ensures_clause) {
      os << "\n  ensures ";
      print_expr(os, *f.ensures_clause);
    }
    os << ' ';
    print_block_body(os, *f.body, 0);
    os << "\n\n";
  }
  return os.str();
}

}  // namespace testforge::lang
