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

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "testforge/concolic/concolic.hpp"
#include "testforge/heapgen/heapgen.hpp"
#include "testforge/lang/interpreter.hpp"
#include "testforge/lang/loader.hpp"
#include "testforge/randgen/grammar.hpp"
#include "testforge/randgen/random.hpp"
#include "testforge/seqgen/seqgen.hpp"

namespace {

using namespace testforge;

std::string corpus(const std::string& file) {
  std::ifstream in(std::string(TESTFORGE_CORPUS_DIR) + "/" + file);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const lang::Program& program(const std::string& file) {
  static std::map<std::string, lang::Program> cache;
  auto it = cache.find(file);
  if (it == cache.end()) it = cache.emplace(file, lang::load_or_throw(corpus(file), file)).first;
  return it->second;
}

std::string fin_ll(int n) {
  return "root LinkedList\n"
         "objset nodes = LinkedListElement " + std::to_string(n) + "\n"
         "set LinkedList.Head = nodes null\n"
         "set LinkedList.Tail = nodes null\n"
         "set LinkedList.size = int 0 " + std::to_string(n) + "\n"
         "set LinkedListElement.Prev = nodes null\n"
         "set LinkedListElement.Next = nodes null\n";
}

void BM_InterpretLeapYear(benchmark::State& state) {
  const auto& p = program("leapyear.mini");
  const std::vector args{lang::Value::Int(static_cast<std::int32_t>(state.range(0)))};
  for (auto _ : state) benchmark::DoNotOptimize(lang::eval_call(p, "FromDayToYear", args, {}));
}
BENCHMARK(BM_InterpretLeapYear)->Arg(367)->Arg(7874)->Arg(100000);

void BM_ExploreMultiply(benchmark::State& state) {
  const auto& p = program("multiply.mini");
  for (auto _ : state) benchmark::DoNotOptimize(concolic::explore(p, "Multiply").cases.size());
}
BENCHMARK(BM_ExploreMultiply);

void BM_ExploreBSearch(benchmark::State& state) {
  const auto& p = program("bsearch.mini");
  concolic::ExploreLimits limits;
  limits.max_queries = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(concolic::explore(p, "BSearch", limits).cases.size());
}
BENCHMARK(BM_ExploreBSearch)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_GenerateLists(benchmark::State& state) {
  const auto& p = program("linkedlist.mini");
  const auto fin = heapgen::finitize(p, fin_ll(static_cast<int>(state.range(0))));
  std::uint64_t explored = 0;
  for (auto _ : state) explored = heapgen::generate(p, "repOK", fin).stats.explored;
  state.counters["explored"] = static_cast<double>(explored);
}
BENCHMARK(BM_GenerateLists)->DenseRange(3, 8);

void BM_GenerateListsUnpruned(benchmark::State& state) {
  const auto& p = program("linkedlist.mini");
  const auto fin = heapgen::finitize(p, fin_ll(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(heapgen::generate(p, "repOK", fin, {false}).stats.explored);
}
BENCHMARK(BM_GenerateListsUnpruned)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_RandomMultiply(benchmark::State& state) {
  const auto& p = program("multiply.mini");
  const auto domains = randgen::default_domains(p, "Multiply");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(randgen::gen_random(p, "Multiply", domains, 1, n).inputs.size());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_RandomMultiply)->Arg(10000);

void BM_EnumerateIntExpr(benchmark::State& state) {
  const auto g = randgen::parse_grammar(corpus("int_expr.bnf"));
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(randgen::enumerate(g, depth).strings.size());
}
BENCHMARK(BM_EnumerateIntExpr)->Arg(4)->Arg(5);

void BM_ListSequences(benchmark::State& state) {
  const auto& p = program("linkedlist.mini");
  const seqgen::ApiSpec api{"LinkedList", "repOK", "newList", {{"add", {}}, {"removeFirst", {}}}};
  seqgen::SequenceOptions o;
  o.max_len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(seqgen::explore_sequences(p, api, o).sequences.size());
}
BENCHMARK(BM_ListSequences)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
