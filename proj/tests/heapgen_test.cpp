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

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles/dot_grammar.hpp"
#include "oracles/list_oracle.hpp"
#include "test_util.hpp"
#include "testforge/heapgen/heapgen.hpp"
#include "testforge/lang/interpreter.hpp"
#include "testforge/lang/loader.hpp"

namespace testforge::heapgen {
namespace {

using testforge::testing::from_structure;
using testforge::testing::load_corpus;
using testforge::testing::NativeList;
using testforge::testing::permutation_canonical;
using testforge::testing::read_corpus;

std::string fin_ll(int nodes, int min_size, int max_size) {
  return "root LinkedList\n"
         "objset nodes = LinkedListElement " + std::to_string(nodes) + "\n"
         "set LinkedList.Head = nodes null\n"
         "set LinkedList.Tail = nodes null\n"
         "set LinkedList.size = int " + std::to_string(min_size) + " " + std::to_string(max_size) + "\n"
         "set LinkedListElement.Prev = nodes null\n"
         "set LinkedListElement.Next = nodes null\n";
}

const lang::Program& list_program() {
  static const lang::Program p = load_corpus("linkedlist.mini");
  return p;
}

Generation gen_ll(int n, int lo, int hi, bool prune = true) {
  return generate(list_program(), "repOK", finitize(list_program(), fin_ll(n, lo, hi)), {prune});
}

std::set<std::string> native_classes(const Generation& g) {
  std::set<std::string> out;
  for (const auto& s : g.structures) out.insert(permutation_canonical(from_structure(s)));
  return out;
}

// --- finitize --------------------------------------------------------------

TEST(Finitize, LinkedListBounds) {
  auto fin = finitize(list_program(), fin_ll(2, 0, 2));
  ASSERT_EQ(fin.pools.size(), 1u);
  EXPECT_EQ(fin.pools[0].count, 2u);
  CandidateSpace space(list_program(), fin);
  // Root Head, Tail, size; then Data, Prev, Next, mark per node.
  ASSERT_EQ(space.size(), 3u + 2 * 4);
  EXPECT_EQ(space.domain_size(0), 3u);
  EXPECT_EQ(space.domain_size(1), 3u);
  EXPECT_EQ(space.domain_size(2), 3u);
  EXPECT_EQ(space.value(2, 0), lang::Value::Int(0));
  EXPECT_EQ(space.value(2, 2), lang::Value::Int(2));
  for (std::size_t node = 0; node < 2; ++node) {
    std::size_t base = 3 + 4 * node;
    EXPECT_EQ(space.domain_size(base), 1u);      // Data
    EXPECT_EQ(space.domain_size(base + 1), 3u);  // Prev
    EXPECT_EQ(space.domain_size(base + 2), 3u);  // Next
    EXPECT_EQ(space.domain_size(base + 3), 1u);  // mark
  }
  EXPECT_EQ(space.value(0, 0), lang::Value::Null());
  EXPECT_EQ(space.value(0, 1), lang::Value::Handle(2));
  EXPECT_EQ(space.value(0, 2), lang::Value::Handle(3));
}

TEST(Finitize, SingletonInterval) {
  auto fin = finitize(list_program(), fin_ll(1, 5, 5));
  CandidateSpace space(list_program(), fin);
  EXPECT_EQ(space.domain_size(2), 1u);
  EXPECT_EQ(space.value(2, 0), lang::Value::Int(5));
}

TEST(Finitize, Errors) {
  const auto& p = list_program();
  EXPECT_THROW(finitize(p, "root LinkedList\nobjset nodes = LinkedListElement 0\nset LinkedList.Head = nodes\n"
                           "set LinkedList.Tail = nodes null\nset LinkedList.size = int 0 0\n"),
               FinitizationError);
  EXPECT_THROW(finitize(p, "root Tree\n"), FinitizationError);
  EXPECT_THROW(finitize(p, fin_ll(2, 0, 2) + "set LinkedList.depth = int 0 1\n"), FinitizationError);
  EXPECT_THROW(finitize(p, fin_ll(2, 3, 2)), FinitizationError);
  EXPECT_THROW(finitize(p, "root LinkedList\nset LinkedList.size = int 0 1\n"), FinitizationError);
  EXPECT_THROW(finitize(p, fin_ll(2, 0, 2) + "set LinkedList.size = int 0 1\n"), FinitizationError);
  EXPECT_THROW(finitize(p, fin_ll(2, 0, 2) + "frobnicate\n"), FinitizationError);
  try {
    finitize(p, "root LinkedList\nobjset nodes = Missing 2\n");
    FAIL();
  } catch (const FinitizationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Finitize, TextRoundTrip) {
  auto fin = finitize(list_program(), fin_ll(3, 1, 3) + "set LinkedListElement.mark = bool  # both\n");
  EXPECT_EQ(finitize(list_program(), to_text(fin)), fin);
}

// --- prune_next ------------------------------------------------------------

TEST(PruneNext, SkipsUnreadFields) {
  CandidateSpace space(list_program(), finitize(list_program(), fin_ll(2, 0, 2)));
  CandidateVector cv(space.size(), 0);
  cv[2] = 1;  // Head = Tail = null, size = 1
  AccessLog log{0, 1, 2};
  auto next = prune_next(space, cv, log);
  ASSERT_TRUE(next.has_value());
  CandidateVector expect = cv;
  expect[2] = 2;
  // Every Prev/Next combination for size 1 is skipped at once.
  EXPECT_EQ(*next, expect);

  // The predicate itself stops after those reads on this candidate.
  struct Logger : lang::ExecutionObserver {
    const CandidateSpace& space;
    AccessLog log;
    explicit Logger(const CandidateSpace& s) : space(s) {}
    void on_field_read(lang::ObjectId id, int f) override {
      auto pos = space.position(id, f);
      if (pos && std::find(log.begin(), log.end(), *pos) == log.end()) log.push_back(*pos);
    }
  } logger(space);
  const lang::Value arg[] = {lang::Value::Handle(space.root())};
  auto r = lang::eval_call(list_program(), "repOK", arg, space.decode(cv), {}, &logger);
  EXPECT_EQ(r.outcome.value, lang::Value::Bool(false));
  for (std::size_t pos : logger.log) EXPECT_LT(pos, 3u);
}

TEST(PruneNext, FullLogIsLexicographic) {
  CandidateSpace space(list_program(), finitize(list_program(), fin_ll(2, 0, 2)));
  AccessLog all(space.size());
  std::iota(all.begin(), all.end(), 0);
  std::optional<CandidateVector> a = CandidateVector(space.size(), 0), b = a;
  std::size_t steps = 0;
  while (a) {
    ASSERT_EQ(a, b);
    a = prune_next(space, *a, all, false);
    b = lexicographic_next(space, *b);
    ++steps;
  }
  EXPECT_FALSE(b.has_value());
  EXPECT_EQ(steps, space.total());
}

TEST(PruneNext, IsomorphismBound) {
  CandidateSpace space(list_program(), finitize(list_program(), fin_ll(3, 0, 3)));
  CandidateVector cv(space.size(), 0);
  cv[0] = 1;  // Head = node 0
  // Tail read after Head may name node 0 or the fresh node 1, never node 2.
  AccessLog log{0, 1};
  cv[1] = 2;
  // Tail already names the fresh node and Head cannot pass node 0, so the
  // space is exhausted; without the bound Tail moves on to node 2.
  EXPECT_FALSE(prune_next(space, cv, log).has_value());
  EXPECT_EQ((*prune_next(space, cv, log, false))[1], 3u);
}

// --- canonical form and DOT ------------------------------------------------

Structure decode(const CandidateSpace& space, CandidateVector cv) {
  return Structure{space.decode(cv), space.root(), cv};
}

TEST(Canonical, Relabeling) {
  CandidateSpace space(list_program(), finitize(list_program(), fin_ll(2, 0, 2)));
  // Positions: Head 0, Tail 1, size 2, node0 Prev 4 Next 5, node1 Prev 8 Next 9.
  CandidateVector a(space.size(), 0), b(space.size(), 0);
  a[0] = 1, a[1] = 2, a[2] = 2, a[5] = 2, a[8] = 1;
  b[0] = 2, b[1] = 1, b[2] = 2, b[9] = 1, b[4] = 2;
  EXPECT_EQ(canonical_form(decode(space, a)), canonical_form(decode(space, b)));
  CandidateVector c(space.size(), 0);
  c[0] = 1, c[1] = 1, c[2] = 1;
  EXPECT_NE(canonical_form(decode(space, a)), canonical_form(decode(space, c)));
  // Unreachable nodes do not matter.
  CandidateVector d = c;
  d[9] = 2;
  EXPECT_EQ(canonical_form(decode(space, c)), canonical_form(decode(space, d)));
}

TEST(Dot, EmptyAndTwoElementLists) {
  auto g = gen_ll(2, 0, 2);
  ASSERT_EQ(g.structures.size(), 3u);
  std::string empty = to_dot(list_program(), g.structures[0]);
  EXPECT_TRUE(testforge::testing::is_valid_dot(empty)) << empty;
  EXPECT_NE(empty.find("n0 [label=\"LinkedList\\nsize = 0\"]"), std::string::npos);
  EXPECT_EQ(empty.find("n1"), std::string::npos);
  EXPECT_EQ(empty.find("->"), std::string::npos);

  std::string two = to_dot(list_program(), g.structures[2]);
  EXPECT_TRUE(testforge::testing::is_valid_dot(two));
  EXPECT_NE(two.find("n1 -> n2 [label=\"Next\"]"), std::string::npos) << two;
  EXPECT_NE(two.find("n2 -> n1 [label=\"Prev\"]"), std::string::npos);
  EXPECT_EQ(two, to_dot(list_program(), g.structures[2]));
}

TEST(Dot, GrammarAcceptsAllSizeThreeStructures) {
  for (const auto& s : gen_ll(3, 0, 3).structures) EXPECT_TRUE(testforge::testing::is_valid_dot(to_dot(list_program(), s)));
  EXPECT_FALSE(testforge::testing::is_valid_dot("digraph { a -> }"));
  EXPECT_FALSE(testforge::testing::is_valid_dot("digraph { a [label=\"x] }"));
}

// --- generate --------------------------------------------------------------

TEST(Generate, TwoNodesThreeStructures) {
  auto g = gen_ll(2, 0, 2);
  ASSERT_EQ(g.structures.size(), 3u);
  std::set<int> sizes;
  for (const auto& s : g.structures) sizes.insert(from_structure(s).size);
  EXPECT_EQ(sizes, (std::set<int>{0, 1, 2}));
  EXPECT_EQ(g.stats.classes, 3u);
  auto bf = testforge::testing::brute_force_lists(2, 0, 2);
  EXPECT_EQ(native_classes(g), bf.classes);
}

void expect_chain(const NativeList& l) {
  ASSERT_GE(l.size, 1);
  int cur = l.head, prev = -1, count = 0;
  while (cur >= 0) {
    EXPECT_EQ(l.prev[cur], prev);
    prev = cur;
    cur = l.next[cur];
    ++count;
  }
  EXPECT_EQ(prev, l.tail);
  EXPECT_EQ(count, l.size);
}

TEST(Generate, FiveNodesSixStructures) {
  auto g = gen_ll(5, 0, 5);
  ASSERT_EQ(g.structures.size(), 6u);
  EXPECT_EQ(native_classes(g), testforge::testing::orbit_classes(5, 0, 5));
  for (const auto& s : g.structures) {
    NativeList l = from_structure(s);
    if (l.size == 2 || l.size == 5) expect_chain(l);
  }
}

TEST(Generate, MinimumSizeRespected) {
  auto g = gen_ll(3, 1, 2);
  EXPECT_EQ(g.structures.size(), 2u);
}

constexpr const char* kExtraPredicates = R"(
bool never(LinkedList l) { return false; }
bool headNextNull(LinkedList l) { return l.Head.Next == null; }
bool spin(LinkedList l) { while (true) { } return true; }
int notPredicate(LinkedList l) { return 0; }
)";

TEST(Generate, PredicateEdgeCases) {
  auto p = lang::load_or_throw(read_corpus("linkedlist.mini") + kExtraPredicates);
  auto fin = finitize(p, fin_ll(2, 0, 2));
  auto none = generate(p, "never", fin);
  EXPECT_TRUE(none.structures.empty());
  EXPECT_GT(none.stats.explored, 0u);

  auto crash = generate(p, "headNextNull", fin);
  EXPECT_GT(crash.stats.errors, 0u);
  EXPECT_FALSE(crash.structures.empty());

  GenerateOptions small;
  small.step_budget = 200;
  auto spin = generate(p, "spin", fin, small);
  EXPECT_TRUE(spin.structures.empty());
  EXPECT_EQ(spin.stats.bound_exceeded, spin.stats.explored);

  EXPECT_THROW(generate(p, "notPredicate", fin), std::invalid_argument);
  EXPECT_THROW(generate(p, "missing", fin), std::invalid_argument);
}

TEST(Generate, SinkCanStop) {
  std::size_t seen = 0;
  auto st = generate(list_program(), "repOK", finitize(list_program(), fin_ll(4, 0, 4)), {},
                     [&](const Structure&) { return ++seen < 2; });
  EXPECT_EQ(seen, 2u);
  EXPECT_TRUE(st.truncated);
}

// --- properties ------------------------------------------------------------

TEST(Properties, ValidityAndInvariants) {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& s : gen_ll(n, 0, n).structures) {
      const lang::Value arg[] = {lang::Value::Handle(s.root)};
      auto r = lang::eval_call(list_program(), "repOK", arg, s.heap);
      EXPECT_EQ(r.outcome.value, lang::Value::Bool(true));
      EXPECT_TRUE(testforge::testing::satisfies_invariants(from_structure(s)));
    }
  }
}

TEST(Properties, CompleteAgainstBruteForce) {
  for (int n = 1; n <= 4; ++n) {
    auto g = gen_ll(n, 0, n);
    auto bf = testforge::testing::brute_force_lists(n, 0, n);
    EXPECT_EQ(native_classes(g), bf.classes) << n;
    EXPECT_LE(g.stats.classes, bf.valid);
    EXPECT_EQ(bf.classes.size(), static_cast<std::size_t>(n + 1));
  }
}

// The inlined brute-force check agrees with the plain invariant checker.
TEST(Properties, BruteForceCheckerAgrees) {
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t valid = 0, vectors = 0;
    NativeList l;
    l.prev.assign(n, -1);
    l.next.assign(n, -1);
    std::vector<int*> refs{&l.head, &l.tail};
    for (int i = 0; i < n; ++i) refs.push_back(&l.prev[i]), refs.push_back(&l.next[i]);
    for (l.size = 0; l.size <= n; ++l.size) {
      for (int* r : refs) *r = -1;
      while (true) {
        ++vectors;
        valid += testforge::testing::satisfies_invariants(l);
        std::size_t i = refs.size();
        while (i > 0 && *refs[i - 1] == n - 1) *refs[--i] = -1;
        if (i == 0) break;
        ++*refs[i - 1];
      }
    }
    auto bf = testforge::testing::brute_force_lists(n, 0, n);
    EXPECT_EQ(bf.vectors, vectors);
    EXPECT_EQ(bf.valid, valid);
  }
}

TEST(Properties, NonIsomorphic) {
  for (int n = 1; n <= 5; ++n) {
    auto g = gen_ll(n, 0, n);
    std::set<std::string> forms, native;
    for (const auto& s : g.structures) {
      EXPECT_TRUE(forms.insert(canonical_form(s)).second);
      EXPECT_TRUE(native.insert(permutation_canonical(from_structure(s))).second);
    }
    // One accepted vector per class: the search never revisits a class.
    EXPECT_EQ(g.stats.valid, g.stats.classes);
  }
}

TEST(Properties, PruningIsSound) {
  for (int n = 1; n <= 3; ++n) {
    auto pruned = gen_ll(n, 0, n, true);
    auto full = gen_ll(n, 0, n, false);
    EXPECT_EQ(native_classes(pruned), native_classes(full));
    EXPECT_LT(pruned.stats.explored, full.stats.explored);
    EXPECT_EQ(full.stats.explored, CandidateSpace(list_program(), finitize(list_program(), fin_ll(n, 0, n))).total());
    EXPECT_EQ(pruned.stats.explored + pruned.stats.pruned_skips, full.stats.explored);
  }
}

}  // namespace
}  // namespace testforge::heapgen
