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

// Symbolic 32-bit integer expressions.
//
// Expressions are immutable DAGs shared through reference counting, so the
// concolic engine can build long chains (loop counters, accumulated bounds)
// without copying. All arithmetic is two's-complement wraparound; division
// and modulo take a nonzero constant divisor.

#ifndef TESTFORGE_SOLVER_SYM_EXPR_HPP_
#define TESTFORGE_SOLVER_SYM_EXPR_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace testforge::solver {

using VarId = std::int32_t;

struct VarDecl {
  std::string name;
  std::int32_t lo = INT32_MIN;
  std::int32_t hi = INT32_MAX;

  bool operator==(const VarDecl&) const = default;
};

enum class SymOp : std::uint8_t { kVar, kConst, kNeg, kAdd, kSub, kMul, kDiv, kMod };

struct SymNode;

class SymExpr {
 public:
  SymExpr() = default;  // null expression; only valid as a placeholder

  static SymExpr var(VarId id);
  static SymExpr constant(std::int32_t value);

  explicit operator bool() const { return node_ != nullptr; }
  const SymNode& node() const { return *node_; }
  const SymNode* get() const { return node_.get(); }

  SymOp op() const;
  bool is_const() const { return op() == SymOp::kConst; }
  bool is_var() const { return op() == SymOp::kVar; }
  std::int32_t value() const;  // kConst
  VarId var_id() const;        // kVar
  const SymExpr& lhs() const;
  const SymExpr& rhs() const;

 private:
  explicit SymExpr(std::shared_ptr<const SymNode> node) : node_(std::move(node)) {}
  friend SymExpr make_node(SymOp, SymExpr, SymExpr);

  std::shared_ptr<const SymNode> node_;
};

struct SymNode {
  SymOp op = SymOp::kConst;
  std::int32_t value = 0;  // kConst
  VarId var = -1;          // kVar
  SymExpr a, b;            // unary uses a
};

SymExpr make_node(SymOp op, SymExpr a, SymExpr b = {});

SymExpr operator-(const SymExpr& a);
SymExpr operator+(const SymExpr& a, const SymExpr& b);
SymExpr operator-(const SymExpr& a, const SymExpr& b);
SymExpr operator*(const SymExpr& a, const SymExpr& b);
// Throws std::invalid_argument when the divisor is not a nonzero constant.
SymExpr operator/(const SymExpr& a, const SymExpr& b);
SymExpr operator%(const SymExpr& a, const SymExpr& b);

// Wraparound evaluation; `model` is indexed by VarId.
std::int32_t eval(const SymExpr& e, std::span<const std::int32_t> model);

bool structurally_equal(const SymExpr& a, const SymExpr& b);

// Fully parenthesized infix; variables print by name when `vars` covers them.
std::string to_string(const SymExpr& e, std::span<const VarDecl> vars = {});

// Appends every variable occurring in `e` to `out` (unsorted, may repeat).
void collect_vars(const SymExpr& e, std::vector<VarId>& out);

std::size_t dag_size(const SymExpr& e);

}  // namespace testforge::solver

#endif  // TESTFORGE_SOLVER_SYM_EXPR_HPP_
