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

#include "testforge/lang/parser.hpp"

#include <initializer_list>
#include <set>
#include <string>
#include <utility>

#include "lexer.hpp"

namespace testforge::lang {
namespace {

using detail::Tok;
using detail::Token;

struct SyntaxError {
  Diagnostic diagnostic;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string source_name) : toks_(std::move(tokens)) {
    program_.source_name = std::move(source_name);
  }

  Program run() {
    std::set<std::string> records;
    std::set<std::string> functions;
    while (!at(Tok::kEof)) {
      if (at(Tok::kStruct)) {
        RecordDecl r = record();
        if (!records.insert(r.name).second) {
          throw SyntaxError{{r.loc, "duplicate declaration of struct '" + r.name + "'"}};
        }
        program_.records.push_back(std::move(r));
      } else {
        current_function_ = static_cast<int>(program_.functions.size());
        FunctionDef f = function();
        current_function_ = -1;
        if (!functions.insert(f.name).second) {
          throw SyntaxError{{f.loc, "duplicate declaration of function '" + f.name + "'"}};
        }
        program_.functions.push_back(std::move(f));
      }
    }
    return std::move(program_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = pos_ + ahead;
    return k < toks_.size() ? toks_[k] : toks_.back();
  }
  bool at(Tok t) const { return peek().kind == t; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    const Token& t = peek();
    if (t.kind == Tok::kError) throw SyntaxError{{t.loc, t.text}};
    std::string msg = "syntax error: unexpected ";
    msg += t.kind == Tok::kEof ? std::string("end of input") : "'" + t.text + "'";
    msg += ", expected ";
    std::size_t n = 0;
    for (Tok e : expected) {
      if (n++ > 0) msg += n == expected.size() ? " or " : ", ";
      msg += detail::spelling(e);
    }
    throw SyntaxError{{t.loc, msg}};
  }

  Token expect(Tok t) {
    if (!at(t)) fail({t});
    return take();
  }

  bool accept(Tok t) {
    if (!at(t)) return false;
    take();
    return true;
  }

  NodeId new_node(SiteKind site, SourceLoc loc) {
    NodeInfo info;
    info.site = site;
    info.loc = loc;
    info.function = current_function_;
    info.in_contract = in_contract_;
    program_.nodes.push_back(info);
    return static_cast<NodeId>(program_.nodes.size() - 1);
  }

  bool at_type() const {
    return at(Tok::kIntKw) || at(Tok::kBoolKw) || at(Tok::kVoidKw) || at(Tok::kIdent);
  }

  Type type() {
    if (accept(Tok::kIntKw)) return Type::Int();
    if (accept(Tok::kBoolKw)) return Type::Bool();
    if (accept(Tok::kVoidKw)) return Type::Void();
    if (at(Tok::kIdent)) return Type::Record(take().text);
    fail({Tok::kIntKw, Tok::kBoolKw, Tok::kVoidKw, Tok::kIdent});
  }

  RecordDecl record() {
    RecordDecl r;
    r.loc = expect(Tok::kStruct).loc;
    r.name = expect(Tok::kIdent).text;
    expect(Tok::kLBrace);
    while (!at(Tok::kRBrace)) {
      if (!at_type()) fail({Tok::kIntKw, Tok::kBoolKw, Tok::kIdent, Tok::kRBrace});
      FieldDecl f;
      f.loc = peek().loc;
      f.type = type();
      f.name = expect(Tok::kIdent).text;
      expect(Tok::kSemi);
      r.fields.push_back(std::move(f));
    }
    expect(Tok::kRBrace);
    accept(Tok::kSemi);
    return r;
  }

  FunctionDef function() {
    FunctionDef f;
    if (!at_type()) fail({Tok::kStruct, Tok::kIntKw, Tok::kBoolKw, Tok::kVoidKw, Tok::kIdent});
    f.loc = peek().loc;
    f.return_type = type();
    f.name = expect(Tok::kIdent).text;
    expect(Tok::kLParen);
    if (!at(Tok::kRParen)) {
      do {
        Param p;
        p.loc = peek().loc;
        p.type = type();
        p.name = expect(Tok::kIdent).text;
        f.params.push_back(std::move(p));
      } while (accept(Tok::kComma));
    }
    expect(Tok::kRParen);
    in_contract_ = true;
    if (accept(Tok::kRequires)) f.requires_clause = expr();
    if (accept(Tok::kEnsures)) f.ensures_clause = expr();
    in_contract_ = false;
    if (!at(Tok::kLBrace)) fail({Tok::kRequires, Tok::kEnsures, Tok::kLBrace});
    f.body = block();
    return f;
  }

  std::unique_ptr<Stmt> make_stmt(Stmt::Kind kind, SourceLoc loc) {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    s->loc = loc;
    s->id = new_node(SiteKind::kStatement, loc);
    return s;
  }

  std::unique_ptr<Stmt> block() {
    auto s = make_stmt(Stmt::Kind::kBlock, expect(Tok::kLBrace).loc);
    while (!at(Tok::kRBrace)) {
      if (at(Tok::kEof)) fail({Tok::kRBrace});
      s->body.push_back(statement());
    }
    expect(Tok::kRBrace);
    return s;
  }

  std::unique_ptr<Stmt> statement() {
    SourceLoc loc = peek().loc;
    switch (peek().kind) {
      case Tok::kLBrace:
        return block();
      case Tok::kIf: {
        take();
        auto s = make_stmt(Stmt::Kind::kIf, loc);
        program_.nodes[static_cast<std::size_t>(s->id)].decision = true;
        expect(Tok::kLParen);
        s->value = expr();
        expect(Tok::kRParen);
        s->body.push_back(statement());
        if (accept(Tok::kElse)) s->body.push_back(statement());
        return s;
      }
      case Tok::kWhile: {
        take();
        auto s = make_stmt(Stmt::Kind::kWhile, loc);
        program_.nodes[static_cast<std::size_t>(s->id)].decision = true;
        expect(Tok::kLParen);
        s->value = expr();
        expect(Tok::kRParen);
        s->body.push_back(statement());
        return s;
      }
      case Tok::kReturn: {
        take();
        auto s = make_stmt(Stmt::Kind::kReturn, loc);
        if (!at(Tok::kSemi)) s->value = expr();
        expect(Tok::kSemi);
        return s;
      }
      case Tok::kCheck: {
        take();
        auto s = make_stmt(Stmt::Kind::kCheck, loc);
        program_.nodes[static_cast<std::size_t>(s->id)].check = true;
        expect(Tok::kLParen);
        s->value = expr();
        expect(Tok::kRParen);
        expect(Tok::kSemi);
        return s;
      }
      case Tok::kIntKw:
      case Tok::kBoolKw:
        return local();
      case Tok::kIdent:
        if (peek(1).kind == Tok::kIdent) return local();
        break;
      default:
        break;
    }
    return assignment_or_call();
  }

  std::unique_ptr<Stmt> local() {
    SourceLoc loc = peek().loc;
    auto s = make_stmt(Stmt::Kind::kLocal, loc);
    s->decl_type = type();
    s->name = expect(Tok::kIdent).text;
    if (accept(Tok::kAssign)) s->value = expr();
    if (!at(Tok::kSemi)) fail({Tok::kAssign, Tok::kSemi});
    take();
    return s;
  }

  std::unique_ptr<Stmt> assignment_or_call() {
    SourceLoc loc = peek().loc;
    // Allocate the statement node before parsing its expressions so that ids
    // follow source order.
    NodeId id = new_node(SiteKind::kStatement, loc);
    auto lhs = expr();
    auto s = std::make_unique<Stmt>();
    s->id = id;
    s->loc = loc;
    if (at(Tok::kAssign) || at(Tok::kPlusAssign) || at(Tok::kMinusAssign)) {
      Tok op = take().kind;
      if (lhs->kind != Expr::Kind::kVar && lhs->kind != Expr::Kind::kField) {
        throw SyntaxError{{loc, "syntax error: left-hand side of assignment is not a variable or field"}};
      }
      auto rhs = expr();
      if (op != Tok::kAssign) {
        auto bin = make_expr(Expr::Kind::kBinary, rhs->loc);
        bin->binary_op = op == Tok::kPlusAssign ? BinaryOp::kAdd : BinaryOp::kSub;
        bin->operands.push_back(clone(*lhs));
        bin->operands.push_back(std::move(rhs));
        rhs = std::move(bin);
      }
      if (lhs->kind == Expr::Kind::kVar) {
        s->kind = Stmt::Kind::kAssign;
        s->name = lhs->name;
      } else {
        s->kind = Stmt::Kind::kFieldStore;
        s->target = std::move(lhs);
      }
      s->value = std::move(rhs);
    } else {
      if (lhs->kind != Expr::Kind::kCall) {
        if (at(Tok::kSemi)) {
          throw SyntaxError{{loc, "syntax error: expression statement must be a call"}};
        }
        fail({Tok::kAssign, Tok::kPlusAssign, Tok::kMinusAssign, Tok::kSemi});
      }
      s->kind = Stmt::Kind::kExprStmt;
      s->value = std::move(lhs);
    }
    expect(Tok::kSemi);
    return s;
  }

  std::unique_ptr<Expr> make_expr(Expr::Kind kind, SourceLoc loc) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->loc = loc;
    e->id = new_node(SiteKind::kExpression, loc);
    return e;
  }

  std::unique_ptr<Expr> clone(const Expr& src) {
    auto e = make_expr(src.kind, src.loc);
    e->int_value = src.int_value;
    e->bool_value = src.bool_value;
    e->name = src.name;
    e->unary_op = src.unary_op;
    e->binary_op = src.binary_op;
    for (const auto& op : src.operands) e->operands.push_back(clone(*op));
    return e;
  }

  std::unique_ptr<Expr> binary(BinaryOp op, std::unique_ptr<Expr> l, std::unique_ptr<Expr> r, SourceLoc loc) {
    auto e = make_expr(Expr::Kind::kBinary, loc);
    e->binary_op = op;
    if (is_logical(op)) program_.nodes[static_cast<std::size_t>(e->id)].decision = true;
    e->operands.push_back(std::move(l));
    e->operands.push_back(std::move(r));
    return e;
  }

  std::unique_ptr<Expr> expr() { return or_expr(); }

  std::unique_ptr<Expr> or_expr() {
    auto e = and_expr();
    while (at(Tok::kOrOr)) {
      SourceLoc loc = take().loc;
      e = binary(BinaryOp::kOr, std::move(e), and_expr(), loc);
    }
    return e;
  }

  std::unique_ptr<Expr> and_expr() {
    auto e = eq_expr();
    while (at(Tok::kAndAnd)) {
      SourceLoc loc = take().loc;
      e = binary(BinaryOp::kAnd, std::move(e), eq_expr(), loc);
    }
    return e;
  }

  std::unique_ptr<Expr> eq_expr() {
    auto e = rel_expr();
    while (at(Tok::kEq) || at(Tok::kNe)) {
      Token t = take();
      e = binary(t.kind == Tok::kEq ? BinaryOp::kEq : BinaryOp::kNe, std::move(e), rel_expr(), t.loc);
    }
    return e;
  }

  std::unique_ptr<Expr> rel_expr() {
    auto e = add_expr();
    while (at(Tok::kLt) || at(Tok::kLe) || at(Tok::kGt) || at(Tok::kGe)) {
      Token t = take();
      BinaryOp op = t.kind == Tok::kLt   ? BinaryOp::kLt
                    : t.kind == Tok::kLe ? BinaryOp::kLe
                    : t.kind == Tok::kGt ? BinaryOp::kGt
                                         : BinaryOp::kGe;
      e = binary(op, std::move(e), add_expr(), t.loc);
    }
    return e;
  }

  std::unique_ptr<Expr> add_expr() {
    auto e = mul_expr();
    while (at(Tok::kPlus) || at(Tok::kMinus)) {
      Token t = take();
      e = binary(t.kind == Tok::kPlus ? BinaryOp::kAdd : BinaryOp::kSub, std::move(e), mul_expr(), t.loc);
    }
    return e;
  }

  std::unique_ptr<Expr> mul_expr() {
    auto e = unary_expr();
    while (at(Tok::kStar) || at(Tok::kSlash) || at(Tok::kPercent)) {
      Token t = take();
      BinaryOp op = t.kind == Tok::kStar ? BinaryOp::kMul : t.kind == Tok::kSlash ? BinaryOp::kDiv : BinaryOp::kMod;
      e = binary(op, std::move(e), unary_expr(), t.loc);
    }
    return e;
  }

  std::unique_ptr<Expr> unary_expr() {
    if (at(Tok::kMinus) && peek(1).kind == Tok::kInt) {
      SourceLoc loc = take().loc;
      Token lit = take();
      auto e = make_expr(Expr::Kind::kIntLit, loc);
      e->int_value = static_cast<std::int32_t>(-lit.int_value);
      return postfix(std::move(e));
    }
    if (at(Tok::kMinus) || at(Tok::kBang)) {
      Token t = take();
      auto e = make_expr(Expr::Kind::kUnary, t.loc);
      e->unary_op = t.kind == Tok::kMinus ? UnaryOp::kNeg : UnaryOp::kNot;
      e->operands.push_back(unary_expr());
      return e;
    }
    return postfix(primary());
  }

  std::unique_ptr<Expr> postfix(std::unique_ptr<Expr> e) {
    while (at(Tok::kDot)) {
      SourceLoc loc = take().loc;
      auto f = make_expr(Expr::Kind::kField, loc);
      f->name = expect(Tok::kIdent).text;
      f->operands.push_back(std::move(e));
      e = std::move(f);
    }
    return e;
  }

  std::unique_ptr<Expr> primary() {
    const Token& t = peek();
    SourceLoc loc = t.loc;
    switch (t.kind) {
      case Tok::kInt: {
        if (t.int_value > 2147483647LL) {
          throw SyntaxError{{loc, "integer literal out of 32-bit range"}};
        }
        auto e = make_expr(Expr::Kind::kIntLit, loc);
        e->int_value = static_cast<std::int32_t>(take().int_value);
        return e;
      }
      case Tok::kTrue:
      case Tok::kFalse: {
        auto e = make_expr(Expr::Kind::kBoolLit, loc);
        e->bool_value = take().kind == Tok::kTrue;
        return e;
      }
      case Tok::kNull:
        take();
        return make_expr(Expr::Kind::kNull, loc);
      case Tok::kResult:
        take();
        return make_expr(Expr::Kind::kResult, loc);
      case Tok::kNew: {
        take();
        auto e = make_expr(Expr::Kind::kNew, loc);
        e->name = expect(Tok::kIdent).text;
        if (accept(Tok::kLParen)) expect(Tok::kRParen);
        return e;
      }
      case Tok::kIdent: {
        std::string name = take().text;
        if (accept(Tok::kLParen)) {
          auto e = make_expr(Expr::Kind::kCall, loc);
          e->name = std::move(name);
          if (!at(Tok::kRParen)) {
            do {
              e->operands.push_back(expr());
            } while (accept(Tok::kComma));
          }
          expect(Tok::kRParen);
          return e;
        }
        auto e = make_expr(Expr::Kind::kVar, loc);
        e->name = std::move(name);
        return e;
      }
      case Tok::kLParen: {
        take();
        auto e = expr();
        expect(Tok::kRParen);
        return e;
      }
      default:
        fail({Tok::kInt, Tok::kTrue, Tok::kFalse, Tok::kNull, Tok::kNew, Tok::kIdent, Tok::kLParen});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program program_;
  int current_function_ = -1;
  bool in_contract_ = false;
};

}  // namespace

ParseResult parse(std::string_view source, std::string source_name) {
  ParseResult result;
  try {
    Parser parser(detail::tokenize(source), std::move(source_name));
    result.program = parser.run();
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back(e.diagnostic);
  }
  return result;
}

}  // namespace testforge::lang
