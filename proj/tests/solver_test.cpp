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

#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <set>

#include "oracles/solver_oracle.hpp"
#include "testforge/solver/constraint.hpp"
#include "testforge/solver/solve.hpp"
#include "testforge/solver/sym_expr.hpp"

namespace testforge::solver {
namespace {

const SymExpr x = SymExpr::var(0);
const SymExpr y = SymExpr::var(1);
const SymExpr z = SymExpr::var(2);

SymExpr k(std::int32_t v) { return SymExpr::constant(v); }

std::vector<VarDecl> full(int n) {
  std::vector<VarDecl> v;
  const char* names[] = {"x", "y", "z"};
  for (int i = 0; i < n; ++i) v.push_back({names[i], INT32_MIN, INT32_MAX});
  return v;
}

TEST(SymExpr, WraparoundEval) {
  std::vector<std::int32_t> m{INT32_MAX, 2};
  EXPECT_EQ(eval(x + y, m), INT32_MIN + 1);
  EXPECT_EQ(eval(x * y, m), -2);
  EXPECT_EQ(eval(-(x + k(1)), m), INT32_MIN);
  std::vector<std::int32_t> mn{INT32_MIN, 0};
  EXPECT_EQ(eval(x / k(-1), mn), INT32_MIN);
  EXPECT_EQ(eval(x % k(-1), mn), 0);
  std::vector<std::int32_t> neg{-7, 0};
  EXPECT_EQ(eval(x / k(2), neg), -3);
  EXPECT_EQ(eval(x % k(2), neg), -1);
}

TEST(SymExpr, DivisorMustBeNonzeroConstant) {
  EXPECT_THROW(x / y, std::invalid_argument);
  EXPECT_THROW(x % k(0), std::invalid_argument);
}

TEST(SymExpr, SharedDagStaysLinear) {
  // lo/hi updates of a binary search share subterms; evaluation and printing
  // must not blow up on the tree expansion.
  SymExpr lo = x, hi = y;
  for (int i = 0; i < 200; ++i) {
    SymExpr mid = (lo + hi) / k(2);
    if (i % 2) lo = mid + k(1);
    else hi = mid;
  }
  EXPECT_LT(dag_size(lo + hi), 2000u);
  std::vector<std::int32_t> m{0, 1000};
  EXPECT_NO_THROW(eval(lo + hi, m));
  EXPECT_LE(to_string(lo).size(), 4100u);
}

// --- solve -----------------------------------------------------------------

TEST(Solve, ProductFortyTwoOverFullRange) {
  auto vars = full(2);
  std::vector<Constraint> cs{make_constraint(x * y, Rel::kEq, k(42))};
  auto r = solve(vars, cs);
  ASSERT_EQ(r.status, SolveStatus::kSat);
  EXPECT_EQ(static_cast<std::int32_t>(static_cast<std::int64_t>(r.model[0]) * r.model[1]), 42);
  EXPECT_LT(r.nodes, 100u);
}

TEST(Solve, ContradictoryBounds) {
  auto vars = full(1);
  std::vector<Constraint> a{make_constraint(x, Rel::kLt, k(0)), make_constraint(x, Rel::kGt, k(0))};
  EXPECT_EQ(solve(vars, a).status, SolveStatus::kUnsat);
  std::vector<Constraint> b{make_constraint(x, Rel::kGe, k(10)), make_constraint(x, Rel::kLe, k(9))};
  EXPECT_EQ(solve(vars, b).status, SolveStatus::kUnsat);
}

TEST(Solve, MidpointOverflowWitness) {
  std::vector<VarDecl> vars{{"lo", 0, INT32_MAX}, {"hi", 0, INT32_MAX}, {"mid", INT32_MIN, INT32_MAX}};
  SymExpr lo = x, hi = y, mid = z;
  std::vector<Constraint> cs{make_constraint(lo, Rel::kLt, hi),
                             make_constraint(mid, Rel::kEq, (lo + hi) / k(2)),
                             make_constraint(mid, Rel::kLt, lo)};
  auto r = solve(vars, cs);
  ASSERT_EQ(r.status, SolveStatus::kSat);
  std::int64_t sum = static_cast<std::int64_t>(r.model[0]) + r.model[1];
  EXPECT_GE(sum, std::int64_t{1} << 31);
  EXPECT_LT(r.model[2], r.model[0]);
}

TEST(Solve, ModularRootOfWrappedLinearEquality) {
  // 3x == 1 (mod 2^32) has the single solution 0xAAAAAAAB.
  auto vars = full(1);
  std::vector<Constraint> cs{make_constraint(x * k(3), Rel::kEq, k(1))};
  auto r = solve(vars, cs);
  ASSERT_EQ(r.status, SolveStatus::kSat);
  EXPECT_EQ(static_cast<std::uint32_t>(r.model[0]), 0xAAAAAAABu);
  // 2x == 1 has none.
  std::vector<Constraint> even{make_constraint(x * k(2), Rel::kEq, k(1))};
  EXPECT_EQ(solve(vars, even).status, SolveStatus::kUnsat);
}

TEST(Solve, HintIsPreferred) {
  auto vars = full(2);
  std::vector<Constraint> cs{make_constraint(x, Rel::kGt, k(5))};
  SolveOptions opts;
  opts.hint = {std::int32_t{77}, std::int32_t{-3}};
  auto r = solve(vars, cs, opts);
  ASSERT_EQ(r.status, SolveStatus::kSat);
  EXPECT_EQ(r.model[0], 77);
  EXPECT_EQ(r.model[1], -3);  // unconstrained keeps its hint
}

TEST(Solve, UnknownWhenBudgetRunsOut) {
  auto vars = full(3);
  // No small witness and no propagation foothold.
  std::vector<Constraint> cs{make_constraint(x * y * z, Rel::kEq, k(1000003 * 7)),
                             make_constraint(x % k(1000), Rel::kEq, k(999)),
                             make_constraint(y % k(1000), Rel::kEq, k(997))};
  SolveOptions opts;
  opts.node_budget = 50;
  auto r = solve(vars, cs, opts);
  EXPECT_NE(r.status, SolveStatus::kUnsat);
  if (r.status == SolveStatus::kUnknown) EXPECT_EQ(r.nodes, 50u);
}

TEST(Solve, RejectsUndeclaredVariableAndEmptyDomain) {
  auto one = full(1);
  std::vector<Constraint> cs{make_constraint(y, Rel::kEq, k(1))};
  EXPECT_THROW(solve(one, cs), std::invalid_argument);
  std::vector<VarDecl> bad{{"x", 5, 4}};
  EXPECT_THROW(solve(bad, std::vector<Constraint>{}), std::invalid_argument);
}

TEST(Solve, EmptySystemIsSat) {
  auto vars = full(2);
  auto r = solve(vars, std::vector<Constraint>{});
  EXPECT_EQ(r.status, SolveStatus::kSat);
  EXPECT_EQ(r.model.size(), 2u);
}

TEST(Solve, SingletonDomains) {
  std::vector<VarDecl> vars{{"x", 5, 5}, {"y", 5, 5}};
  std::vector<Constraint> ok{make_constraint(x * y, Rel::kEq, k(25))};
  EXPECT_EQ(solve(vars, ok).status, SolveStatus::kSat);
  std::vector<Constraint> no{make_constraint(x + y, Rel::kNe, k(10))};
  EXPECT_EQ(solve(vars, no).status, SolveStatus::kUnsat);
}

TEST(Solve, AgreesWithEnumerationOnRandomSystems) {
  oracle::SystemGenerator gen(20260101);
  int disagreements = 0, unknown = 0, sat = 0;
  for (int i = 0; i < 300; ++i) {
    auto sys = gen.next();
    auto vars = oracle::to_vars(sys);
    auto cs = oracle::to_constraints(sys);
    auto r = solve(vars, cs);
    bool expect = oracle::enumerate(sys).has_value();
    if (r.status == SolveStatus::kUnknown) ++unknown;
    else if ((r.status == SolveStatus::kSat) != expect) ++disagreements;
    if (r.status == SolveStatus::kSat) {
      ++sat;
      std::vector<std::int64_t> m(r.model.begin(), r.model.end());
      for (const auto& c : sys.cs) EXPECT_TRUE(oracle::tholds(c, m)) << dump(vars, cs);
    }
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_EQ(unknown, 0);
  EXPECT_GT(sat, 30);
  EXPECT_LT(sat, 290);
}

// --- negate ----------------------------------------------------------------

TEST(Negate, SwapsRelation) {
  auto c = make_constraint(x, Rel::kLt, k(5), Provenance{7, true});
  auto n = negate(c);
  EXPECT_EQ(n.rel, Rel::kGe);
  EXPECT_EQ(n.provenance->polarity, false);
  EXPECT_EQ(negate(make_constraint(x, Rel::kEq, y)).rel, Rel::kNe);
}

TEST(Negate, InvolutionAndPartition) {
  oracle::SystemGenerator gen(99);
  std::mt19937 rng(5);
  int checked = 0;
  while (checked < 100) {
    auto sys = gen.next();
    auto cs = oracle::to_constraints(sys);
    for (auto& c : cs) {
      c.provenance = Provenance{static_cast<std::int32_t>(rng() % 50), (rng() & 1) != 0};
      EXPECT_TRUE(structurally_equal(negate(negate(c)), c));
      for (int t = 0; t < 20; ++t) {
        std::vector<std::int32_t> m;
        for (auto [lo, hi] : sys.domains)
          m.push_back(std::uniform_int_distribution<std::int32_t>(lo, hi)(rng));
        EXPECT_NE(holds(c, m), holds(negate(c), m));
      }
      ++checked;
    }
  }
}

// --- simplify --------------------------------------------------------------

TEST(Simplify, DropsAdditiveIdentity) {
  auto out = simplify(std::vector<Constraint>{make_constraint(x + k(0), Rel::kLt, k(5))});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(structurally_equal(out[0], make_constraint(x, Rel::kLt, k(5))));
}

TEST(Simplify, RemovesTautology) {
  EXPECT_TRUE(simplify(std::vector<Constraint>{make_constraint(k(3), Rel::kLt, k(5))}).empty());
  auto f = simplify(std::vector<Constraint>{make_constraint(k(5), Rel::kLt, k(3))});
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(solve(full(0), f).status, SolveStatus::kUnsat);
}

TEST(Simplify, SubstitutesFixedVariableAndPreservesModels) {
  std::vector<Constraint> in{make_constraint(x, Rel::kEq, k(7)), make_constraint(x * y, Rel::kEq, k(42))};
  auto out = simplify(in);
  ASSERT_EQ(out.size(), 2u);
  std::vector<VarId> vs;
  collect_vars(out[1].lhs, vs);
  collect_vars(out[1].rhs, vs);
  EXPECT_EQ(std::set<VarId>(vs.begin(), vs.end()), std::set<VarId>{1});
  for (std::int32_t xv = -10; xv <= 10; ++xv)
    for (std::int32_t yv = -100; yv <= 100; ++yv) {
      std::vector<std::int32_t> m{xv, yv};
      bool a = holds(in[0], m) && holds(in[1], m);
      bool b = holds(out[0], m) && holds(out[1], m);
      ASSERT_EQ(a, b) << xv << "," << yv;
    }
}

TEST(Simplify, TightensDomains) {
  std::vector<VarDecl> vars{{"x", -100, 100}, {"y", -100, 100}};
  std::vector<Constraint> in{make_constraint(x + k(1), Rel::kLt, y), make_constraint(y, Rel::kLe, k(3))};
  simplify(in, &vars);
  EXPECT_EQ(vars[0].hi, 1);
  EXPECT_EQ(vars[1].lo, -98);
}

TEST(Simplify, EquisatisfiableOnRandomSystems) {
  oracle::SystemGenerator gen(4242);
  for (int i = 0; i < 200; ++i) {
    auto sys = gen.next();
    auto vars = oracle::to_vars(sys);
    auto cs = oracle::to_constraints(sys);
    auto out = simplify(cs);
    EXPECT_EQ(solve(vars, cs).status, solve(vars, out).status) << dump(vars, cs);
  }
}

TEST(Dump, OneConstraintPerLine) {
  auto vars = full(2);
  std::vector<Constraint> cs{make_constraint(x * y, Rel::kEq, k(42), Provenance{3, true}),
                             make_constraint(x, Rel::kNe, k(0))};
  EXPECT_EQ(dump(vars, cs),
            "var x in [-2147483648, 2147483647]\n"
            "var y in [-2147483648, 2147483647]\n"
            "(x * y) == 42  @3:T\n"
            "x != 0\n");
}

}  // namespace
}  // namespace testforge::solver
