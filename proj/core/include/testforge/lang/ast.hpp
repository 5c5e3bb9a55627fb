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

// Abstract syntax of the subject language.
//
// Nodes are "fat": one struct per syntactic category with a kind tag. The
// parser fills in the syntactic fields; `typecheck` fills in the resolution
// fields (types, frame slots, field indices, callee indices) that the
// interpreter relies on.

#ifndef TESTFORGE_LANG_AST_HPP_
#define TESTFORGE_LANG_AST_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace testforge::lang {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct SourceLoc {
  int line = 0;
  int col = 0;

  bool operator==(const SourceLoc&) const = default;
};

enum class TypeKind : std::uint8_t { kInt, kBool, kRecord, kVoid, kNull, kError };

struct Type {
  TypeKind kind = TypeKind::kError;
  std::string record;  // set iff kind == kRecord

  static Type Int() { return {TypeKind::kInt, {}}; }
  static Type Bool() { return {TypeKind::kBool, {}}; }
  static Type Void() { return {TypeKind::kVoid, {}}; }
  static Type NullT() { return {TypeKind::kNull, {}}; }
  static Type Error() { return {TypeKind::kError, {}}; }
  static Type Record(std::string name) { return {TypeKind::kRecord, std::move(name)}; }

  bool is_reference() const { return kind == TypeKind::kRecord || kind == TypeKind::kNull; }
  std::string to_string() const;
  bool operator==(const Type&) const = default;
};

enum class UnaryOp : std::uint8_t { kNeg, kNot };
enum class BinaryOp : std::uint8_t {
  kAdd, kSub, kMul, kDiv, kMod,
  kLt, kLe, kGt, kGe, kEq, kNe,
  kAnd, kOr,
};

std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);
bool is_relational(BinaryOp op);
bool is_arithmetic(BinaryOp op);
bool is_logical(BinaryOp op);

struct Expr {
  enum class Kind : std::uint8_t {
    kIntLit, kBoolLit, kNull, kVar, kResult, kField, kUnary, kBinary, kCall, kNew,
  };

  Kind kind = Kind::kIntLit;
  NodeId id = kNoNode;
  SourceLoc loc;

  std::int32_t int_value = 0;
  bool bool_value = false;
  std::string name;  // variable, field, callee or record name
  UnaryOp unary_op = UnaryOp::kNeg;
  BinaryOp binary_op = BinaryOp::kAdd;
  // Operands: unary [0]; binary [0, 1]; field [0] is the object; call args.
  std::vector<std::unique_ptr<Expr>> operands;

  // Resolution (typecheck).
  Type type;
  int slot = -1;         // kVar: frame slot
  int field_index = -1;  // kField
  int callee = -1;       // kCall: function index
};

struct Stmt {
  enum class Kind : std::uint8_t {
    kBlock, kLocal, kAssign, kFieldStore, kIf, kWhile, kReturn, kCheck, kExprStmt,
  };

  Kind kind = Kind::kBlock;
  NodeId id = kNoNode;
  SourceLoc loc;

  std::string name;  // kLocal, kAssign: variable name
  Type decl_type;    // kLocal
  // kFieldStore: target is a kField expression naming the stored field.
  std::unique_ptr<Expr> target;
  // Initializer, right-hand side, condition, return value, check argument
  // or expression statement. May be null for `T x;` and `return;`.
  std::unique_ptr<Expr> value;
  // kBlock: statements; kIf: [then, else?]; kWhile: [body].
  std::vector<std::unique_ptr<Stmt>> body;

  int slot = -1;  // kLocal, kAssign (typecheck)
};

struct FieldDecl {
  std::string name;
  Type type;
  SourceLoc loc;
};

struct RecordDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  SourceLoc loc;

  int field_index(std::string_view field) const;
};

struct Param {
  std::string name;
  Type type;
  SourceLoc loc;
};

struct FunctionDef {
  std::string name;
  std::vector<Param> params;
  Type return_type;
  std::unique_ptr<Expr> requires_clause;
  std::unique_ptr<Expr> ensures_clause;
  std::unique_ptr<Stmt> body;  // kBlock
  SourceLoc loc;

  int num_slots = 0;  // params first, then locals (typecheck)
};

// What a node id denotes; used by coverage and trace validation.
enum class SiteKind : std::uint8_t { kStatement, kExpression };

struct NodeInfo {
  SiteKind site = SiteKind::kExpression;
  SourceLoc loc;
  int function = -1;     // owning function index, -1 for none
  bool decision = false;  // if/while condition owner, && / || operator
  bool check = false;     // check statement
  bool in_contract = false;
};

class Program {
 public:
  std::vector<RecordDecl> records;
  std::vector<FunctionDef> functions;
  // Indexed by NodeId; filled by the parser.
  std::vector<NodeInfo> nodes;
  std::string source_name;
  bool checked = false;  // set once typecheck succeeds

  const RecordDecl* find_record(std::string_view name) const;
  int record_index(std::string_view name) const;
  const FunctionDef* find_function(std::string_view name) const;
  int function_index(std::string_view name) const;

  // Functions transitively reachable by calls from `fn` (including itself),
  // in index order.
  std::vector<int> reachable_functions(int fn) const;
};

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
// Compares declarations and bodies, ignoring node ids and locations.
bool structurally_equal(const Program& a, const Program& b);

}  // namespace testforge::lang

#endif  // TESTFORGE_LANG_AST_HPP_
