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

// Compiled constraint systems and HC4-style interval propagation.

#ifndef TESTFORGE_SRC_SOLVER_COMPILED_HPP_
#define TESTFORGE_SRC_SOLVER_COMPILED_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "testforge/solver/constraint.hpp"
#include "testforge/solver/sym_expr.hpp"

namespace testforge::solver::detail {

struct Interval {
  std::int64_t lo = INT32_MIN;
  std::int64_t hi = INT32_MAX;

  bool empty() const { return lo > hi; }
  bool singleton() const { return lo == hi; }
  std::uint64_t size() const { return empty() ? 0 : static_cast<std::uint64_t>(hi - lo) + 1; }
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
};

struct Instr {
  SymOp op = SymOp::kConst;
  std::int32_t value = 0;
  VarId var = -1;
  int a = -1;
  int b = -1;
};

struct CompiledConstraint {
  Rel rel = Rel::kEq;
  int lhs = -1;
  int rhs = -1;
};

// A constraint system flattened into children-first instructions. Each
// variable owns exactly one instruction.
struct Compiled {
  std::vector<Instr> code;
  std::vector<CompiledConstraint> cons;
  std::vector<int> var_instr;                  // VarId -> instr or -1
  std::vector<std::vector<int>> cons_of_var;   // VarId -> constraint indices
  std::vector<std::vector<VarId>> vars_of_con;  // sorted, unique
};

// Throws std::invalid_argument on undeclared variables or null operands.
Compiled compile(std::span<const Constraint> cs, std::size_t num_vars);

// Evaluates every instruction under a total model.
void eval_all(const Compiled& c, std::span<const std::int32_t> model, std::vector<std::int32_t>& out);
bool all_hold(const Compiled& c, std::span<const std::int32_t> model, std::vector<std::int32_t>& scratch);

class Propagator {
 public:
  explicit Propagator(const Compiled& c, int max_rounds = 32) : c_(c), max_rounds_(max_rounds) {}

  // Narrows `domains` (indexed by VarId); returns false if some constraint
  // is proven unsatisfiable.
  bool run(std::vector<Interval>& domains);

  const std::vector<Interval>& ranges() const { return range_; }

 private:
  bool narrow(int i, Interval to, bool& changed);
  bool forward(int i, bool& changed);
  bool backward(int i, bool& changed);
  bool refine(const CompiledConstraint& k, bool& changed);

  const Compiled& c_;
  int max_rounds_;
  std::vector<Interval> range_;
  // Backward rules apply only to exact nodes: the wrapped value equals the
  // mathematical value minus offset_ (a multiple of 2^32).
  std::vector<char> exact_;
  std::vector<std::int64_t> offset_;
  bool significant_ = false;
};

}  // namespace testforge::solver::detail

#endif  // TESTFORGE_SRC_SOLVER_COMPILED_HPP_
