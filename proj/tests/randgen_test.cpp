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

#include <map>
#include <set>

#include "oracles/grammar_oracle.hpp"
#include "oracles/shrink_oracle.hpp"
#include "test_util.hpp"
#include "testforge/lang/loader.hpp"
#include "testforge/randgen/grammar.hpp"
#include "testforge/randgen/random.hpp"

namespace testforge::randgen {
namespace {

using concolic::Verdict;
using lang::Value;
using testforge::testing::count_derivations;
using testforge::testing::load_corpus;
using testforge::testing::minimal_failing_pairs;
using testforge::testing::read_corpus;

Domains point_domains(std::int32_t lo, std::int32_t hi) {
  return {Domain::Record("Point", {{"x", Domain::Int(lo, hi)}, {"y", Domain::Int(lo, hi)}})};
}

std::pair<std::int32_t, std::int32_t> xy(const lang::CallInput& in) {
  const auto& f = in.heap.at(in.args[0].handle()).fields;
  return {f[0].as_int(), f[1].as_int()};
}

std::string with_ensures(std::string src, const std::string& signature, const std::string& clause) {
  auto at = src.find(signature);
  EXPECT_NE(at, std::string::npos);
  src.insert(at + signature.size(), " ensures " + clause);
  return src;
}

// --- gen_random ------------------------------------------------------------

TEST(GenRandom, MultiplyInRangeAndDeterministic) {
  auto p = load_corpus("multiply.mini");
  auto a = gen_random(p, "Multiply", point_domains(0, 100), 7, 10);
  ASSERT_EQ(a.inputs.size(), 10u);
  for (const auto& in : a.inputs) {
    auto [x, y] = xy(in);
    EXPECT_TRUE(x >= 0 && x <= 100 && y >= 0 && y <= 100);
  }
  auto b = gen_random(p, "Multiply", point_domains(0, 100), 7, 10);
  EXPECT_EQ(a.inputs, b.inputs);
  EXPECT_NE(a.inputs, gen_random(p, "Multiply", point_domains(0, 100), 8, 10).inputs);
  EXPECT_EQ(a.boundary, (std::vector<bool>{true, true, true, true, true, false, false, false, false, false}));
  // Boundary prefix over [0, 100]: 0, 1, 100, then around again.
  EXPECT_EQ(xy(a.inputs[0]), std::pair(0, 0));
  EXPECT_EQ(xy(a.inputs[1]), std::pair(1, 1));
  EXPECT_EQ(xy(a.inputs[2]), std::pair(100, 100));
  EXPECT_EQ(xy(a.inputs[3]), std::pair(0, 0));
}

TEST(GenRandom, SingletonDomain) {
  auto p = load_corpus("multiply.mini");
  auto r = gen_random(p, "Multiply", point_domains(5, 5), 1, 3);
  ASSERT_EQ(r.inputs.size(), 3u);
  for (const auto& in : r.inputs) EXPECT_EQ(xy(in), std::pair(5, 5));
}

TEST(GenRandom, BoundaryValues) {
  EXPECT_EQ(boundary_values(0, 100), (std::vector<std::int32_t>{0, 1, 100}));
  EXPECT_EQ(boundary_values(INT32_MIN, INT32_MAX), (std::vector<std::int32_t>{INT32_MIN, -1, 0, 1, INT32_MAX}));
  EXPECT_EQ(boundary_values(5, 5), (std::vector<std::int32_t>{5}));
  EXPECT_EQ(boundary_values(-9, -2), (std::vector<std::int32_t>{-9, -2}));
}

TEST(GenRandom, UniformIntContainmentAndSpread) {
  std::mt19937_64 rng(42);
  std::mt19937_64 pick(5);
  for (int i = 0; i < 10000; ++i) {
    auto a = static_cast<std::int32_t>(pick()), b = static_cast<std::int32_t>(pick());
    auto lo = std::min(a, b), hi = std::max(a, b);
    auto v = uniform_int(rng, lo, hi);
    ASSERT_TRUE(v >= lo && v <= hi);
  }
  std::map<std::int32_t, int> hist;
  for (int i = 0; i < 100000; ++i) ++hist[uniform_int(rng, 0, 9)];
  ASSERT_EQ(hist.size(), 10u);
  for (auto [v, n] : hist) EXPECT_NEAR(n, 10000, 500) << v;
  bool lo_seen = false, hi_seen = false;
  for (int i = 0; i < 1000; ++i) {
    auto v = uniform_int(rng, INT32_MAX - 1, INT32_MAX);
    lo_seen = lo_seen || v == INT32_MAX - 1;
    hi_seen = hi_seen || v == INT32_MAX;
  }
  EXPECT_TRUE(lo_seen && hi_seen);
}

TEST(GenRandom, RequiresRejection) {
  auto p = lang::load_or_throw("int f(int a) requires a > 90 { return a; }\n");
  auto r = gen_random(p, "f", {Domain::Int(0, 100)}, 3, 50);
  ASSERT_EQ(r.inputs.size(), 50u);
  EXPECT_GT(r.rejected, 0u);
  for (const auto& in : r.inputs) EXPECT_GT(in.args[0].as_int(), 90);

  auto strict = lang::load_or_throw("int g(int a) requires a == 7 { return a; }\n");
  EXPECT_THROW(gen_random(strict, "g", {Domain::Int(INT32_MIN, INT32_MAX)}, 3, 5), DomainTooStrict);
}

TEST(GenRandom, DomainMismatch) {
  auto p = load_corpus("multiply.mini");
  EXPECT_THROW(gen_random(p, "Multiply", {}, 1, 1), std::invalid_argument);
  EXPECT_THROW(gen_random(p, "Multiply", {Domain::Int(0, 1)}, 1, 1), std::invalid_argument);
  EXPECT_THROW(gen_random(p, "Multiply", {Domain::Record("Point", {{"z", Domain::Int(0, 1)}})}, 1, 1),
               std::invalid_argument);
  EXPECT_THROW(gen_random(p, "Multiply", point_domains(3, 2), 1, 1), std::invalid_argument);
  EXPECT_THROW(gen_random(p, "Nope", {}, 1, 1), std::invalid_argument);
}

TEST(GenRandom, StructuresFromHeapgen) {
  auto p = load_corpus("linkedlist.mini");
  auto fin = heapgen::finitize(p,
                               "root LinkedList\nobjset nodes = LinkedListElement 3\n"
                               "set LinkedList.Head = nodes null\nset LinkedList.Tail = nodes null\n"
                               "set LinkedList.size = int 0 3\nset LinkedListElement.Prev = nodes null\n"
                               "set LinkedListElement.Next = nodes null\n");
  auto lists = heapgen::generate(p, "repOK", fin).structures;
  auto r = gen_random(p, "removeFirst", {Domain::Structures(lists)}, 9, 40);
  ASSERT_EQ(r.inputs.size(), 40u);
  for (const auto& in : r.inputs) {
    EXPECT_TRUE(in.heap.well_formed());
    EXPECT_GT(in.heap.at(in.args[0].handle()).fields[2].as_int(), 0);  // size, by requires
    auto res = lang::eval_call(p, "removeFirst", in.args, in.heap);
    EXPECT_EQ(res.outcome.kind, lang::OutcomeKind::kReturned);
  }
}

TEST(GenRandom, DeepBranchIsRarelyHit) {
  auto p = load_corpus("multiply.mini");
  auto r = gen_random(p, "Multiply", default_domains(p, "Multiply"), 2024, 100000);
  std::size_t hits = 0;
  for (const auto& in : r.inputs) hits += lang::eval_call(p, "Multiply", in.args, in.heap).outcome.value == Value::Int(1);
  EXPECT_EQ(hits, 0u);
}

// --- check_property --------------------------------------------------------

TEST(CheckProperty, TautologyHasNoFailures) {
  auto p = lang::load_or_throw(
      with_ensures(read_corpus("multiply.mini"), "int Multiply(Point p)", "result == 0 || result == 1"));
  auto rep = check_property(p, "Multiply", point_domains(-100, 100), 11, 1000);
  EXPECT_EQ(rep.trials, 1000u);
  EXPECT_EQ(rep.failure_count, 0u);
  EXPECT_FALSE(rep.counterexample.has_value());
}

// Pairs with product 42 in [1,50]^2 from which no single shrink step (to 1,
// or halfway to 1) keeps the product at 42.
TEST(CheckProperty, WrongEnsuresShrinksToProductFortyTwo) {
  auto p = lang::load_or_throw(with_ensures(read_corpus("multiply.mini"), "int Multiply(Point p)", "result == 0"));
  auto rep = check_property(p, "Multiply", point_domains(1, 50), 5, 5000);
  ASSERT_GT(rep.failure_count, 0u);
  ASSERT_TRUE(rep.counterexample.has_value());
  EXPECT_EQ(rep.counterexample->verdict, Verdict::kContractViolation);
  auto [x, y] = xy(rep.counterexample->input);
  EXPECT_EQ(x * y, 42);
  EXPECT_TRUE(minimal_failing_pairs().count({x, y}));
  for (const auto& f : rep.failures) {
    auto [fx, fy] = xy(f.input);
    EXPECT_EQ(fx * fy, 42);
  }
}

TEST(CheckProperty, ShrinkMinimality) {
  // Fails for every a >= 13; the minimum under bisection toward 0 is 13.
  auto p = lang::load_or_throw("int f(int a) ensures result < 13 { return a; }\n");
  auto rep = check_property(p, "f", {Domain::Int(0, 1000000)}, 1, 50);
  ASSERT_TRUE(rep.counterexample.has_value());
  std::int32_t v = rep.counterexample->input.args[0].as_int();
  EXPECT_GE(v, 13);
  for (std::int32_t c : shrink_candidates(v, 0)) EXPECT_LT(c, 13);
  EXPECT_GT(rep.shrink_steps, 0u);
}

// Days on which the loop stalls: day 366 of a leap year.
bool stalls(int day) {
  int year = 1980;
  for (int i = 0; i < 100000 && day > 365; ++i) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (leap) {
      if (day == 366) return true;
      day -= 366;
    } else {
      day -= 365;
    }
    ++year;
  }
  return false;
}

TEST(CheckProperty, LeapYearBoundsAreFailures) {
  auto p = lang::load_or_throw(
      with_ensures(read_corpus("leapyear.mini"), "int FromDayToYear(int day)", "result >= 1980"));
  PropertyOptions opt;
  opt.exec.step_budget = 20000;
  opt.max_kept_failures = 1000;
  auto rep = check_property(p, "FromDayToYear", {Domain::Int(0, 10000)}, 17, 5000, opt);
  auto batch = gen_random(p, "FromDayToYear", {Domain::Int(0, 10000)}, 17, 5000);
  std::size_t expected = 0;
  for (const auto& in : batch.inputs) expected += stalls(in.args[0].as_int());
  ASSERT_GT(expected, 0u);
  EXPECT_EQ(rep.failure_count, expected);
  for (const auto& f : rep.failures) {
    EXPECT_EQ(f.verdict, Verdict::kBoundExceeded);
    EXPECT_TRUE(stalls(f.input.args[0].as_int()));
  }
  ASSERT_TRUE(rep.counterexample.has_value());
  EXPECT_TRUE(stalls(rep.counterexample->input.args[0].as_int()));
}

TEST(CheckProperty, RuntimeErrorsAreFailures) {
  auto p = lang::load_or_throw("int d(int a) ensures result >= 0 { return 100 / a; }\n");
  auto rep = check_property(p, "d", {Domain::Int(-3, 3)}, 4, 200, {lang::ExecOptions{}, true, 1000});
  std::set<Verdict> kinds;
  for (const auto& f : rep.failures) kinds.insert(f.verdict);
  EXPECT_EQ(kinds, (std::set<Verdict>{Verdict::kContractViolation, Verdict::kRuntimeError}));
}

TEST(CheckProperty, SeedDeterminism) {
  auto p = lang::load_or_throw(with_ensures(read_corpus("multiply.mini"), "int Multiply(Point p)", "result == 0"));
  auto a = check_property(p, "Multiply", point_domains(1, 50), 99, 3000);
  auto b = check_property(p, "Multiply", point_domains(1, 50), 99, 3000);
  EXPECT_EQ(a, b);
}

TEST(CheckProperty, RequiresEnsures) {
  auto p = load_corpus("multiply.mini");
  EXPECT_THROW(check_property(p, "Multiply", point_domains(0, 1), 1, 1), std::invalid_argument);
}

// --- grammars --------------------------------------------------------------

Grammar corpus_grammar(const std::string& file) { return parse_grammar(read_corpus(file)); }

TEST(Grammar, ParensByDepth) {
  auto g = corpus_grammar("parens.bnf");
  EXPECT_EQ(enumerate(g, 3).strings, (std::vector<std::string>{"a", "(a)", "((a))"}));
  EXPECT_EQ(enumerate(g, 1).strings, (std::vector<std::string>{"a"}));
  EXPECT_TRUE(enumerate(g, 0).strings.empty());
}

TEST(Grammar, IntExpressionsParse) {
  auto g = corpus_grammar("int_expr.bnf");
  auto e = enumerate(g, 4);
  EXPECT_FALSE(e.truncated);
  ASSERT_FALSE(e.strings.empty());
  for (const auto& s : e.strings) {
    auto r = lang::load_source("int f(int x) { return " + s + "; }\n", "expr");
    EXPECT_TRUE(r.program.has_value()) << s;
  }
}

TEST(Grammar, CompleteAgainstDerivationCount) {
  auto balanced = parse_grammar("S ::= \"\" | \"(\" S \")\" S\n");
  for (std::size_t d = 0; d <= 6; ++d) EXPECT_EQ(enumerate(balanced, d).strings.size(), count_derivations(balanced, d)) << d;
  auto parens = corpus_grammar("parens.bnf");
  for (std::size_t d = 0; d <= 10; ++d) EXPECT_EQ(enumerate(parens, d).strings.size(), count_derivations(parens, d));
  auto expr = corpus_grammar("int_expr.bnf");
  for (std::size_t d = 0; d <= 4; ++d) EXPECT_EQ(enumerate(expr, d).strings.size(), count_derivations(expr, d)) << d;
}

TEST(Grammar, CapTruncates) {
  auto g = corpus_grammar("int_expr.bnf");
  auto e = enumerate(g, 5, 100);
  EXPECT_TRUE(e.truncated);
  EXPECT_EQ(e.strings.size(), 100u);
}

TEST(Grammar, SampleWithinDepthAndDeterministic) {
  auto g = corpus_grammar("int_expr.bnf");
  auto all = enumerate(g, 5).strings;
  std::set<std::string> lang(all.begin(), all.end());
  auto a = sample(g, 31, 200, 5);
  EXPECT_EQ(a, sample(g, 31, 200, 5));
  EXPECT_NE(a, sample(g, 32, 200, 5));
  for (const auto& s : a) EXPECT_TRUE(lang.count(s)) << s;
  EXPECT_THROW(sample(g, 1, 1, 2), GrammarError);  // Expr needs depth 3
  EXPECT_EQ(min_depths(g), (std::vector<std::size_t>{3, 2, 1, 1}));
}

TEST(Grammar, Errors) {
  EXPECT_THROW(parse_grammar(""), GrammarError);
  EXPECT_THROW(parse_grammar("S ::= T\n"), GrammarError);
  EXPECT_THROW(parse_grammar("S = \"a\"\n"), GrammarError);
  EXPECT_THROW(parse_grammar("S ::= \"a\n"), GrammarError);
  try {
    parse_grammar("S ::= \"a\"\n\nS ::= X\n");
    FAIL();
  } catch (const GrammarError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  auto never = parse_grammar("S ::= S \"x\"\n");
  EXPECT_TRUE(enumerate(never, 5).strings.empty());
  EXPECT_THROW(sample(never, 1, 1, 10), GrammarError);
}

TEST(Grammar, TextRoundTrip) {
  auto g = corpus_grammar("int_expr.bnf");
  EXPECT_EQ(parse_grammar(to_text(g)), g);
  auto q = parse_grammar("S ::= \"\\\"\" \"\\\\\"\n");
  EXPECT_EQ(q.productions[0].rhs[0].text, "\"");
  EXPECT_EQ(parse_grammar(to_text(q)), q);
}

}  // namespace
}  // namespace testforge::randgen
