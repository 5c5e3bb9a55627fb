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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "oracles/dot_grammar.hpp"
#include "oracles/list_oracle.hpp"
#include "test_util.hpp"
#include "testforge/concolic/concolic.hpp"
#include "testforge/harness/compare.hpp"
#include "testforge/harness/config.hpp"
#include "testforge/harness/run.hpp"
#include "testforge/harness/table.hpp"
#include "testforge/randgen/grammar.hpp"

namespace testforge::harness {
namespace {

namespace fs = std::filesystem;
using concolic::TestCase;
using concolic::Verdict;
using testforge::testing::corpus_path;
using testforge::testing::load_corpus;
using Json = nlohmann::json;

std::string fin_ll(int nodes, int min_size, int max_size) {
  return "root LinkedList\n"
         "objset nodes = LinkedListElement " + std::to_string(nodes) + "\n"
         "set LinkedList.Head = nodes null\n"
         "set LinkedList.Tail = nodes null\n"
         "set LinkedList.size = int " + std::to_string(min_size) + " " + std::to_string(max_size) + "\n"
         "set LinkedListElement.Prev = nodes null\n"
         "set LinkedListElement.Next = nodes null\n";
}

// A fresh, not yet existing directory under the gtest temp dir.
fs::path scratch(const std::string& name) {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  fs::path p = fs::path(::testing::TempDir()) / "testforge_harness" / (std::string(info->name()) + "_" + name);
  fs::remove_all(p);
  return p;
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    out[e.path().filename().string()] = os.str();
  }
  return out;
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_quiet(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig explore_config(const std::string& file, const std::string& fn, const fs::path& out) {
  RunConfig c;
  c.mode = Mode::kExplore;
  c.sources = {corpus_path(file)};
  c.function = fn;
  c.out_dir = out.string();
  c.formats = {Format::kText, Format::kCsv, Format::kJson};
  return c;
}

lang::CallInput point_input(std::int32_t x, std::int32_t y) {
  lang::CallInput in;
  in.args.push_back(testforge::testing::make_point(in.heap, x, y));
  return in;
}

// Config ---------------------------------------------------------------------

TEST(Config, ParsesSectionsAndResolvesPaths) {
  const auto c = parse_config(
      "# comment\n"
      "mode = random\n"
      "sources = a.mini, sub/b.mini\n"
      "function = Multiply\n"
      "seed = 0x2a\n"
      "format = csv json\n"
      "[explore]\n"
      "max_queries = 17\n"
      "policy = dfs\n"
      "int_range = -5 5\n"
      "[random]\n"
      "trials = 300\n"
      "range.p.x = 1 50\n"
      "shrink = no\n"
      "[finitization]\n"
      "root LinkedList\n"
      "[sequences]\n"
      "state = LinkedList\n"
      "operations = add, removeFirst\n"
      "range.add = 0 0\n"
      "[compare]\n"
      "strategies = concolic random korat\n",
      "/base");
  EXPECT_EQ(c.mode, Mode::kRandom);
  EXPECT_EQ(c.sources, (std::vector<std::string>{"/base/a.mini", "/base/sub/b.mini"}));
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.formats, (std::vector<Format>{Format::kCsv, Format::kJson}));
  EXPECT_EQ(c.explore.max_queries, 17u);
  EXPECT_EQ(c.explore.policy, concolic::SearchPolicy::kDepthFirst);
  EXPECT_EQ(c.explore.int_lo, -5);
  EXPECT_EQ(c.explore.int_hi, 5);
  EXPECT_EQ(c.random.trials, 300u);
  EXPECT_FALSE(c.random.shrink);
  EXPECT_EQ(c.random.ranges.at("p.x"), (IntRange{1, 50}));
  EXPECT_EQ(c.korat.finitization, "root LinkedList\n");
  EXPECT_EQ(c.sequences.operations, (std::vector<std::string>{"add", "removeFirst"}));
  EXPECT_EQ(c.sequences.ranges.at("add"), (std::vector<IntRange>{{0, 0}}));
  EXPECT_EQ(c.strategies.size(), 3u);
}

TEST(Config, DefaultsAreFixed) {
  const RunConfig a = parse_config("");
  const RunConfig b = parse_config("");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.seed, kDefaultSeed);
  EXPECT_EQ(a.formats, std::vector<Format>{Format::kText});
}

TEST(Config, ErrorsNameTheLine) {
  const std::pair<const char*, const char*> bad[] = {
      {"mode = explore\ncolour = red\n", "config line 2: unknown key 'colour'"},
      {"[nonsense]\n", "config line 1: unknown section"},
      {"seed = 1\nseed = 2\n", "config line 2: duplicate key"},
      {"seed = twelve\n", "config line 1: bad number"},
      {"mode = fuzz\n", "config line 1: unknown mode"},
      {"[random]\nrange.x = 5 1\n", "config line 2: empty range"},
      {"just words\n", "config line 1: expected"},
      {"[explore]\npolicy = random\n", "config line 2: policy"},
  };
  for (const auto& [text, msg] : bad) {
    try {
      parse_config(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find(msg), std::string::npos) << e.what();
    }
  }
}

TEST(Config, ValidateNeedsModeFields) {
  RunConfig c;
  c.sources = {"x.mini"};
  EXPECT_THROW(validate(c), ConfigError);  // explore without a function
  c.function = "f";
  EXPECT_NO_THROW(validate(c));
  c.mode = Mode::kKorat;
  EXPECT_THROW(validate(c), ConfigError);
  c.mode = Mode::kCompare;
  c.strategies = {"concolic"};
  EXPECT_THROW(validate(c), ConfigError);
  c.strategies = {"concolic", "concolic"};
  EXPECT_THROW(validate(c), ConfigError);
  c.strategies = {"concolic", "guessing"};
  EXPECT_THROW(validate(c), ConfigError);
  c.strategies = {"concolic", "random"};
  EXPECT_NO_THROW(validate(c));
  c.mode = Mode::kGrammar;
  c.sources.clear();
  c.grammar.file = "g.bnf";
  EXPECT_NO_THROW(validate(c));
}

TEST(Config, BudgetGoesToTheModesMainLimit) {
  RunConfig c;
  c.mode = Mode::kRandom;
  apply_budget(c, 77);
  EXPECT_EQ(c.random.trials, 77u);
  c.mode = Mode::kExplore;
  apply_budget(c, 12);
  EXPECT_EQ(c.explore.max_queries, 12u);
  c.mode = Mode::kSequences;
  apply_budget(c, 2);
  EXPECT_EQ(c.sequences.max_len, 2u);
  c.mode = Mode::kKorat;
  apply_budget(c, 500);
  EXPECT_EQ(c.korat.max_candidates, 500u);
}

// Tables ---------------------------------------------------------------------

TEST(Table, MultiplyTwoPassingRows) {
  const auto p = load_corpus("multiply.mini");
  const std::vector<TestCase> cases = {concolic::run_case(p, "Multiply", point_input(3, 14), "concolic"),
                                       concolic::run_case(p, "Multiply", point_input(0, 0), "concolic")};
  EXPECT_EQ(emit_table(p, "Multiply", cases, Format::kText),
            "Result  p                 return value  message\n"
            "------  ----------------  ------------  -------\n"
            "OK      Point{x=3, y=14}  1\n"
            "OK      Point{x=0, y=0}   0\n");
  EXPECT_EQ(emit_table(p, "Multiply", cases, Format::kCsv),
            "Result,p,return value,message,verdict,provenance\n"
            "OK,\"Point{x=3, y=14}\",1,,Pass,concolic\n"
            "OK,\"Point{x=0, y=0}\",0,,Pass,concolic\n");
}

TEST(Table, EmptyCaseListIsHeaderOnly) {
  const auto p = load_corpus("bsearch.mini");
  EXPECT_EQ(emit_table(p, "BSearch", {}, Format::kText),
            "Result  x  n  return value  message\n"
            "------  -  -  ------------  -------\n");
  EXPECT_EQ(emit_table(p, "BSearch", {}, Format::kCsv), "Result,x,n,return value,message,verdict,provenance\n");
  const auto doc = Json::parse(emit_table(p, "BSearch", {}, Format::kJson));
  EXPECT_TRUE(doc.at("cases").empty());
  EXPECT_EQ(doc.at("function"), "BSearch");
  EXPECT_TRUE(parse_table_json(emit_table(p, "BSearch", {}, Format::kJson)).empty());
}

TEST(Table, JsonRoundTrips) {
  struct Subject {
    const char* file;
    const char* fn;
  };
  for (const auto& s : {Subject{"multiply_hidden_bug.mini", "Multiply"}, Subject{"leapyear.mini", "FromDayToYear"},
                        Subject{"linkedlist.mini", "add"}, Subject{"linkedlist.mini", "removeFirst"},
                        Subject{"linkedlist.mini", "newList"}}) {
    const auto p = load_corpus(s.file);
    RunConfig c;
    c.explore.max_queries = 50;
    auto cases = strategy_cases(p, s.fn, "concolic", c);
    ASSERT_FALSE(cases.empty()) << s.fn;
    const auto back = parse_table_json(emit_table(p, s.fn, cases, Format::kJson, exec_options(c)));
    EXPECT_EQ(back, cases) << s.fn;
  }
  // Multi-object heaps from the structure generator.
  const auto p = load_corpus("linkedlist.mini");
  RunConfig c;
  c.korat.predicate = "repOK";
  c.korat.finitization = fin_ll(3, 0, 3);
  const auto cases = strategy_cases(p, "removeFirst", "korat", c);
  ASSERT_EQ(cases.size(), 3u);  // sizes 1..3 satisfy requires
  EXPECT_EQ(parse_table_json(emit_table(p, "removeFirst", cases, Format::kJson, exec_options(c))), cases);
}

TEST(Table, FormatsCarryTheSameRows) {
  const auto p = load_corpus("bsearch.mini");
  RunConfig c;
  c.explore.max_queries = 40;
  const auto cases = strategy_cases(p, "BSearch", "concolic", c);
  const auto exec = exec_options(c);
  const auto table = make_table(p, "BSearch", cases, exec);
  std::istringstream csv(render(table, Format::kCsv));
  std::string line;
  std::getline(csv, line);
  std::vector<std::string> csv_marks;
  while (std::getline(csv, line)) csv_marks.push_back(line.substr(0, line.find(',')));
  const auto doc = Json::parse(render(table, Format::kJson));
  ASSERT_EQ(csv_marks.size(), doc.at("cases").size());
  for (std::size_t i = 0; i < csv_marks.size(); ++i) {
    EXPECT_EQ(csv_marks[i], doc["cases"][i]["mark"]);
    EXPECT_EQ(csv_marks[i], mark(cases[i].verdict));
  }
  std::istringstream text(render(table, Format::kText));
  std::size_t lines = 0;
  while (std::getline(text, line)) ++lines;
  EXPECT_EQ(lines, cases.size() + 2);
}

TEST(Table, MarksAndMessages) {
  EXPECT_EQ(mark(Verdict::kPass), "OK");
  EXPECT_EQ(mark(Verdict::kBoundExceeded), "BOUND");
  for (Verdict v : {Verdict::kContractViolation, Verdict::kCheckViolation, Verdict::kRuntimeError}) {
    EXPECT_EQ(mark(v), "FAIL");
  }
  const auto p = load_corpus("leapyear.mini");
  lang::CallInput in{{lang::Value::Int(366)}, {}};
  const auto tc = concolic::run_case(p, "FromDayToYear", in, "concolic");
  ASSERT_EQ(tc.verdict, Verdict::kBoundExceeded);
  const auto table = make_table(p, "FromDayToYear", std::vector<TestCase>{tc});
  EXPECT_EQ(table.rows[0].mark, "BOUND");
  EXPECT_EQ(table.rows[0].output, "-");
  EXPECT_NE(table.rows[0].message.find("steps bound exceeded"), std::string::npos);
}

TEST(Table, StaleVerdictIsRejected) {
  const auto p = load_corpus("multiply.mini");
  auto tc = concolic::run_case(p, "Multiply", point_input(6, 7), "concolic");
  tc.verdict = Verdict::kPass;
  EXPECT_NO_THROW(emit_table(p, "Multiply", std::vector<TestCase>{tc}, Format::kText));
  tc.verdict = Verdict::kCheckViolation;
  EXPECT_THROW(emit_table(p, "Multiply", std::vector<TestCase>{tc}, Format::kText), ReplayMismatch);
  tc.verdict = Verdict::kPass;
  tc.signature.clear();
  EXPECT_THROW(emit_table(p, "Multiply", std::vector<TestCase>{tc}, Format::kText), ReplayMismatch);
  EXPECT_THROW(emit_table(p, "Divide", {}, Format::kText), std::invalid_argument);
}

TEST(Table, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_THROW(parse_table_json("{\"function\": 3}"), std::invalid_argument);
  EXPECT_THROW(parse_table_json("not json"), std::invalid_argument);
}

// run ------------------------------------------------------------------------

TEST(Run, ExploreHiddenBugExitsOne) {
  const auto dir = scratch("out");
  const auto r = run_quiet(explore_config("multiply_hidden_bug.mini", "Multiply", dir));
  EXPECT_EQ(r.code, kExitFindings) << r.err;
  const auto files = read_dir(dir);
  for (const char* name : {"Multiply.table.txt", "Multiply.table.csv", "Multiply.table.json",
                           "Multiply.coverage.json", "stats.json"}) {
    EXPECT_EQ(files.count(name), 1u) << name;
  }
  const auto cases = parse_table_json(files.at("Multiply.table.json"));
  bool witnessed = false;
  for (const auto& tc : cases) {
    if (tc.verdict != Verdict::kCheckViolation) continue;
    const auto& fields = tc.input.heap.at(tc.input.args[0].handle()).fields;
    witnessed |= lang::wrapping_mul(fields[0].as_int(), fields[1].as_int()) == 42;
  }
  EXPECT_TRUE(witnessed);
  const auto cov = Json::parse(files.at("Multiply.coverage.json"));
  EXPECT_EQ(cov["branches"]["covered"], 2);
  EXPECT_EQ(cov["branches"]["total"], 2);
  EXPECT_NE(files.at("Multiply.table.txt").find("FAIL"), std::string::npos);
}

TEST(Run, KoratFiveNodeListsExitsZero) {
  const auto dir = scratch("out");
  RunConfig c;
  c.mode = Mode::kKorat;
  c.sources = {corpus_path("linkedlist.mini")};
  c.korat.predicate = "repOK";
  c.korat.finitization = fin_ll(5, 0, 5);
  c.out_dir = dir.string();
  const auto r = run_quiet(c);
  EXPECT_EQ(r.code, kExitClean) << r.err;
  const auto files = read_dir(dir);
  std::size_t dots = 0;
  for (const auto& [name, text] : files) {
    if (name.ends_with(".dot")) {
      ++dots;
      EXPECT_TRUE(testforge::testing::is_valid_dot(text)) << name;
    }
  }
  EXPECT_EQ(dots, 6u);
  for (int k = 0; k < 6; ++k) EXPECT_EQ(files.count("structure-" + std::to_string(k) + ".dot"), 1u);
  const auto stats = Json::parse(files.at("stats.json"));
  EXPECT_EQ(stats["korat"]["classes"], 6);
  EXPECT_EQ(stats["korat"]["valid"], 6);
  EXPECT_GT(stats["korat"]["pruned_skips"].get<std::uint64_t>(), 0u);
}

TEST(Run, KoratStructureCountMatchesBruteForce) {
  for (int n = 1; n <= 3; ++n) {
    const auto dir = scratch("n" + std::to_string(n));
    RunConfig c;
    c.mode = Mode::kKorat;
    c.sources = {corpus_path("linkedlist.mini")};
    c.korat.predicate = "repOK";
    c.korat.finitization = fin_ll(n, 0, n);
    c.out_dir = dir.string();
    ASSERT_EQ(run_quiet(c).code, kExitClean);
    const auto oracle = testforge::testing::brute_force_lists(n, 0, n);
    EXPECT_EQ(read_dir(dir).size() - 1, oracle.classes.size()) << n;  // minus stats.json
  }
}

TEST(Run, UsageErrorsWriteNothing) {
  const auto dir = scratch("out");
  auto c = explore_config("multiply.mini", "Multiply", dir);

  auto missing_fn = c;
  missing_fn.function.clear();
  auto unknown_fn = c;
  unknown_fn.function = "Divide";
  auto unreadable = c;
  unreadable.sources = {corpus_path("no_such_file.mini")};
  auto single = c;
  single.mode = Mode::kCompare;
  single.strategies = {"random"};
  auto bad_range = c;
  bad_range.mode = Mode::kRandom;
  bad_range.random.ranges["q.z"] = {0, 1};
  auto bad_pred = c;
  bad_pred.mode = Mode::kKorat;
  bad_pred.sources = {corpus_path("linkedlist.mini")};
  bad_pred.function.clear();
  bad_pred.korat.predicate = "isSorted";
  bad_pred.korat.finitization = fin_ll(2, 0, 2);

  for (const auto& bad : {missing_fn, unknown_fn, unreadable, single, bad_range, bad_pred}) {
    const auto r = run_quiet(bad);
    EXPECT_EQ(r.code, kExitError);
    EXPECT_FALSE(r.err.empty());
    EXPECT_FALSE(fs::exists(dir));
  }
}

TEST(Run, ConfigFileDrivesTheRun) {
  const auto root = scratch("cfg");
  write(root / "src" / "multiply.mini", testforge::testing::read_corpus("multiply.mini"));
  write(root / "run.ini",
        "mode = explore\n"
        "sources = src/multiply.mini\n"
        "function = Multiply\n"
        "out = results\n"
        "format = json\n");
  auto c = load_config((root / "run.ini").string());
  EXPECT_EQ(run_quiet(c).code, kExitClean);
  const auto files = read_dir(root / "results");
  EXPECT_EQ(files.count("Multiply.table.json"), 1u);
  EXPECT_EQ(files.count("Multiply.table.txt"), 0u);

  write(root / "bad.ini", "mode = explore\nsources = src/multiply.mini\nfunction = Multiply\ncolour = red\n");
  EXPECT_THROW(load_config((root / "bad.ini").string()), ConfigError);
  EXPECT_THROW(load_config((root / "absent.ini").string()), ConfigError);
}

TEST(Run, RandomModeShrinksToProductFortyTwo) {
  const auto root = scratch("src");
  std::string src = testforge::testing::read_corpus("multiply.mini");
  const std::string sig = "int Multiply(Point p)";
  src.insert(src.find(sig) + sig.size(), " ensures result == 0");
  write(root / "m.mini", src);
  RunConfig c;
  c.mode = Mode::kRandom;
  c.sources = {(root / "m.mini").string()};
  c.function = "Multiply";
  c.seed = 5;
  c.random.trials = 5000;
  c.random.ranges["p.x"] = {1, 50};
  c.random.ranges["p.y"] = {1, 50};
  c.formats = {Format::kJson};
  c.out_dir = (root / "out").string();
  const auto r = run_quiet(c);
  EXPECT_EQ(r.code, kExitFindings) << r.err;
  const auto files = read_dir(root / "out");
  const auto cases = parse_table_json(files.at("Multiply.table.json"));
  ASSERT_FALSE(cases.empty());
  const auto& last = cases.back();
  EXPECT_EQ(last.provenance, "shrunk");
  EXPECT_EQ(last.verdict, Verdict::kContractViolation);
  const auto& f = last.input.heap.at(last.input.args[0].handle()).fields;
  EXPECT_EQ(f[0].as_int() * f[1].as_int(), 42);
  EXPECT_TRUE(Json::parse(files.at("stats.json"))["random"].contains("counterexample"));
}

TEST(Run, SequencesExitCodeFollowsTheSeededBug) {
  for (const auto& [file, expected] : {std::pair{"linkedlist.mini", kExitClean},
                                       std::pair{"linkedlist_buggy.mini", kExitFindings}}) {
    const auto dir = scratch(file);
    RunConfig c;
    c.mode = Mode::kSequences;
    c.sources = {corpus_path(file)};
    c.sequences.state = "LinkedList";
    c.sequences.invariant = "repOK";
    c.sequences.init = "newList";
    c.sequences.operations = {"add", "removeFirst"};
    c.sequences.ranges["add"] = {{0, 0}};
    c.formats = {Format::kText, Format::kJson};
    c.out_dir = dir.string();
    const auto r = run_quiet(c);
    EXPECT_EQ(r.code, expected) << file << r.err;
    const auto files = read_dir(dir);
    EXPECT_TRUE(testforge::testing::is_valid_dot(files.at("LinkedList.states.dot")));
    const auto doc = Json::parse(files.at("LinkedList.sequences.json"));
    bool failing = false;
    for (const auto& s : doc["sequences"]) failing |= s["mark"] == "FAIL";
    EXPECT_EQ(failing, expected == kExitFindings) << file;
  }
}

TEST(Run, GrammarModeListsTheEnumeration) {
  const auto dir = scratch("out");
  RunConfig c;
  c.mode = Mode::kGrammar;
  c.grammar.file = corpus_path("parens.bnf");
  c.grammar.depth = 4;
  c.out_dir = dir.string();
  ASSERT_EQ(run_quiet(c).code, kExitClean);
  const auto g = randgen::parse_grammar(testforge::testing::read_corpus("parens.bnf"));
  std::string expected;
  for (const auto& s : randgen::enumerate(g, 4).strings) expected += s + "\n";
  EXPECT_EQ(read_dir(dir).at("parens.strings.txt"), expected);
}

TEST(Run, ExitCodeContractOnCorpus) {
  struct Row {
    const char* file;
    const char* fn;
    int exit;
  };
  // Runtime errors (null records) and exhausted bounds alone do not count.
  const Row rows[] = {
      {"multiply.mini", "Multiply", kExitClean},         {"multiply_hidden_bug.mini", "Multiply", kExitFindings},
      {"bsearch.mini", "BSearch", kExitFindings},        {"leapyear.mini", "IsLeapYear", kExitClean},
      {"leapyear.mini", "FromDayToYear", kExitClean},     {"linkedlist.mini", "repOK", kExitClean},
      {"linkedlist.mini", "add", kExitClean},             {"linkedlist.mini", "removeFirst", kExitClean},
      {"linkedlist_buggy.mini", "add", kExitClean},
  };
  for (const auto& row : rows) {
    const auto dir = scratch(std::string(row.file) + "_" + row.fn);
    auto c = explore_config(row.file, row.fn, dir);
    c.formats = {Format::kJson};
    const auto r = run_quiet(c);
    EXPECT_EQ(r.code, row.exit) << row.file << " " << row.fn << r.err;
    // The exit status agrees with the verdicts that were written.
    bool violation = false;
    for (const auto& tc : parse_table_json(read_dir(dir).at(std::string(row.fn) + ".table.json"))) {
      violation |= is_violation(tc.verdict);
    }
    EXPECT_EQ(violation, r.code == kExitFindings) << row.fn;
  }
}

TEST(Run, RerunsAreByteIdentical) {
  const auto root = scratch("src");
  write(root / "fin.txt", fin_ll(3, 0, 3));
  write(root / "all.ini",
        "mode = all\n"
        "sources = " + corpus_path("linkedlist.mini") + "\n"
        "function = removeFirst\n"
        "format = text, csv, json\n"
        "[random]\n"
        "trials = 50\n"
        "[korat]\n"
        "predicate = repOK\n"
        "finitization_file = fin.txt\n"
        "[sequences]\n"
        "state = LinkedList\n"
        "invariant = repOK\n"
        "init = newList\n"
        "operations = add removeFirst\n"
        "[grammar]\n"
        "file = " + corpus_path("int_expr.bnf") + "\n"
        "generate = sample\n"
        "count = 20\n");
  auto c = load_config((root / "all.ini").string());
  c.out_dir = (root / "a").string();
  EXPECT_EQ(run_quiet(c).code, kExitClean);
  c.out_dir = (root / "b").string();
  EXPECT_EQ(run_quiet(c).code, kExitClean);
  const auto a = read_dir(root / "a");
  const auto b = read_dir(root / "b");
  EXPECT_EQ(a, b);
  for (const char* name : {"removeFirst.table.csv", "removeFirst.table.json", "removeFirst.coverage.json",
                           "LinkedList.sequences.json", "int_expr.strings.txt", "structure-3.dot", "stats.json"}) {
    EXPECT_EQ(a.count(name), 1u) << name;
  }
  // A different seed changes the random parts.
  c.seed = 1;
  c.out_dir = (root / "c").string();
  EXPECT_EQ(run_quiet(c).code, kExitClean);
  EXPECT_NE(read_dir(root / "c").at("int_expr.strings.txt"), a.at("int_expr.strings.txt"));
}

// compare_strategies -----------------------------------------------------------

TEST(Compare, ConcolicReachesTheDeepBranch) {
  const auto p = load_corpus("multiply.mini");
  RunConfig c;
  c.random.trials = 10'000;
  const auto cmp = compare_strategies(p, "Multiply", c);
  ASSERT_EQ(cmp.strategies.size(), 2u);
  const auto& concolic = cmp.strategies[0];
  const auto& random = cmp.strategies[1];
  EXPECT_EQ(concolic.name, "concolic");
  EXPECT_EQ(concolic.branches_covered, 2u);
  EXPECT_EQ(concolic.branches_total, 2u);
  EXPECT_EQ(random.name, "random");
  EXPECT_EQ(random.cases, 10'000u);
  EXPECT_EQ(random.branches_covered, 1u);
  EXPECT_EQ(random.branches_total, 2u);
  EXPECT_GE(random.wall_seconds, 0.0);
  const auto doc = Json::parse(comparison_json(cmp));
  EXPECT_FALSE(doc["strategies"][0].contains("wall"));
  EXPECT_NE(comparison_text(cmp).find("2/2"), std::string::npos);
}

TEST(Compare, NarrowRandomDomainCoversBoth) {
  const auto p = load_corpus("multiply.mini");
  RunConfig c;
  c.random.trials = 10'000;
  c.random.ranges["p.x"] = {0, 50};
  c.random.ranges["p.y"] = {0, 50};
  const auto cmp = compare_strategies(p, "Multiply", c);
  EXPECT_EQ(cmp.strategies[1].branches_covered, 2u);
}

TEST(Compare, KoratStrategyOnLists) {
  const auto p = load_corpus("linkedlist.mini");
  RunConfig c;
  c.strategies = {"korat", "concolic"};
  c.korat.predicate = "repOK";
  c.korat.finitization = fin_ll(3, 0, 3);
  const auto cmp = compare_strategies(p, "removeFirst", c);
  EXPECT_EQ(cmp.strategies[0].cases, 3u);
  EXPECT_EQ(cmp.strategies[0].branches_covered, cmp.strategies[0].branches_total);
  EXPECT_EQ(cmp.strategies[0].findings, 0u);

  RunConfig single;
  single.strategies = {"concolic"};
  EXPECT_THROW(compare_strategies(p, "removeFirst", single), ConfigError);
  RunConfig no_fin;
  no_fin.strategies = {"korat", "random"};
  EXPECT_THROW(compare_strategies(p, "removeFirst", no_fin), ConfigError);
}

}  // namespace
}  // namespace testforge::harness
