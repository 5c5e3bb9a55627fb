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

#include "testforge/harness/run.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "testforge/concolic/concolic.hpp"
#include "testforge/harness/compare.hpp"
#include "testforge/harness/table.hpp"
#include "testforge/lang/inputs.hpp"
#include "testforge/lang/loader.hpp"
#include "testforge/randgen/grammar.hpp"

namespace testforge::harness {
namespace {

namespace fs = std::filesystem;
using concolic::TestCase;
using Json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot read file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Producer {
 public:
  explicit Producer(const RunConfig& c) : c_(c), exec_(exec_options(c)) {}

  Artifacts produce() {
    if (!c_.sources.empty()) {
      auto loaded = lang::load_files(c_.sources);
      if (!loaded.program) {
        std::string msg;
        for (const auto& e : loaded.errors) msg += (msg.empty() ? "" : "\n") + e;
        throw std::runtime_error(msg);
      }
      program_ = std::move(*loaded.program);
    }
    if (!c_.function.empty() && program_.find_function(c_.function) == nullptr) {
      throw ConfigError("unknown function '" + c_.function + "'");
    }
    stats_["seed"] = c_.seed;
    stats_["mode"] = std::string(to_string(c_.mode));

    const bool korat_ready = !c_.korat.predicate.empty() && !c_.korat.finitization.empty();
    const bool seq_ready = !c_.sequences.state.empty() && !c_.sequences.operations.empty();
    switch (c_.mode) {
      case Mode::kExplore: function_table(explore_cases()); break;
      case Mode::kRandom: function_table(random_cases()); break;
      case Mode::kKorat: korat(); break;
      case Mode::kGrammar: grammar(); break;
      case Mode::kSequences: sequences(); break;
      case Mode::kCompare: compare(); break;
      case Mode::kAll: {
        if (korat_ready) korat();
        if (!c_.function.empty()) {
          auto cases = explore_cases();
          for (auto& tc : random_cases()) cases.push_back(std::move(tc));
          for (auto& tc : korat_cases_for_function()) cases.push_back(std::move(tc));
          function_table(cases);
        }
        if (seq_ready) sequences();
        if (!c_.grammar.file.empty()) grammar();
        break;
      }
    }
    out_.files["stats.json"] = stats_.dump(2) + "\n";
    return std::move(out_);
  }

 private:
  std::vector<TestCase> explore_cases() {
    auto limits = c_.explore;
    limits.step_budget = c_.step_budget;
    auto ex = concolic::explore(program_, c_.function, limits);
    const auto& s = ex.state;
    stats_["explore"] = Json{{"cases", ex.cases.size()},         {"queries", s.queries},
                             {"infeasible", s.infeasible},        {"unresolved", s.unresolved},
                             {"bound_exceeded", s.bound_exceeded}, {"divergences", s.divergences},
                             {"duplicates", s.duplicates}};
    return std::move(ex.cases);
  }

  std::vector<TestCase> random_cases() {
    const auto domains = random_domains(program_, c_.function, c_, korat_structures(program_, c_));
    const auto batch = randgen::gen_random(program_, c_.function, domains, c_.seed, c_.random.trials);
    std::vector<TestCase> cases;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < batch.inputs.size(); ++i) {
      cases.push_back(
          concolic::run_case(program_, c_.function, batch.inputs[i], batch.boundary[i] ? "boundary" : "random", exec_));
      failures += cases.back().verdict == concolic::Verdict::kPass ? 0 : 1;
    }
    Json stats{{"trials", batch.inputs.size()}, {"rejected", batch.rejected}, {"failures", failures}};
    if (program_.find_function(c_.function)->ensures_clause) {
      randgen::PropertyOptions options;
      options.exec = exec_;
      options.shrink = c_.random.shrink;
      const auto report = randgen::check_property(program_, c_.function, domains, c_.seed, c_.random.trials, options);
      stats["shrink_steps"] = report.shrink_steps;
      if (report.counterexample) {
        cases.push_back(concolic::run_case(program_, c_.function, report.counterexample->input, "shrunk", exec_));
        stats["counterexample"] = lang::render_args(program_, report.counterexample->input);
      }
    }
    stats_["random"] = stats;
    return cases;
  }

  std::vector<TestCase> korat_cases_for_function() {
    if (c_.korat.predicate.empty() || c_.korat.finitization.empty()) return {};
    const auto fin = heapgen::finitize(program_, c_.korat.finitization);
    const auto* def = program_.find_function(c_.function);
    if (def->params.size() != 1 || def->params[0].type.record != fin.root) return {};
    return strategy_cases(program_, c_.function, "korat", c_);
  }

  void function_table(const std::vector<TestCase>& cases) {
    const auto table = make_table(program_, c_.function, cases, exec_);
    for (Format f : c_.formats) {
      out_.files[c_.function + ".table." + std::string(extension(f))] = render(table, f);
    }
    const auto cov = replay_coverage(program_, c_.function, cases, exec_);
    out_.files[c_.function + ".coverage.json"] = coverage_json(program_, cov);
    std::size_t violations = 0;
    for (const auto& tc : cases) violations += is_violation(tc.verdict) ? 1 : 0;
    out_.violations += violations;
    out_.summary.push_back(c_.function + ": " + std::to_string(cases.size()) + " cases, " +
                           std::to_string(violations) + " violation(s), branches " +
                           std::to_string(cov.branch_sides_covered.size()) + "/" +
                           std::to_string(cov.branch_sides_total));
  }

  void korat() {
    const auto fin = heapgen::finitize(program_, c_.korat.finitization);
    heapgen::GenerateOptions options;
    options.prune = c_.korat.prune;
    options.max_candidates = c_.korat.max_candidates;
    const auto gen = heapgen::generate(program_, c_.korat.predicate, fin, options);
    for (std::size_t k = 0; k < gen.structures.size(); ++k) {
      out_.files["structure-" + std::to_string(k) + ".dot"] = heapgen::to_dot(program_, gen.structures[k]);
    }
    const auto& s = gen.stats;
    stats_["korat"] = Json{{"predicate", c_.korat.predicate},
                           {"explored", s.explored},
                           {"valid", s.valid},
                           {"classes", s.classes},
                           {"pruned_skips", s.pruned_skips},
                           {"errors", s.errors},
                           {"bound_exceeded", s.bound_exceeded},
                           {"truncated", s.truncated}};
    out_.summary.push_back(c_.korat.predicate + ": " + heapgen::to_string(s));
    if (c_.mode == Mode::kKorat && !c_.function.empty()) {
      function_table(strategy_cases(program_, c_.function, "korat", c_));
    }
  }

  void grammar() {
    const auto g = randgen::parse_grammar(read_file(c_.grammar.file));
    std::vector<std::string> strings;
    bool truncated = false;
    if (c_.grammar.sample) {
      strings = randgen::sample(g, c_.seed, c_.grammar.count, c_.grammar.depth);
    } else {
      auto e = randgen::enumerate(g, c_.grammar.depth, c_.grammar.cap);
      strings = std::move(e.strings);
      truncated = e.truncated;
    }
    std::string text;
    for (const auto& s : strings) text += s + "\n";
    const std::string stem = fs::path(c_.grammar.file).stem().string();
    out_.files[stem + ".strings.txt"] = text;
    stats_["grammar"] = Json{{"file", fs::path(c_.grammar.file).filename().string()},
                             {"generate", c_.grammar.sample ? "sample" : "enumerate"},
                             {"depth", c_.grammar.depth},
                             {"strings", strings.size()},
                             {"truncated", truncated}};
    out_.summary.push_back(stem + ": " + std::to_string(strings.size()) + " strings");
  }

  void sequences() {
    const auto api = api_of(c_);
    seqgen::SequenceOptions options;
    options.max_len = c_.sequences.max_len;
    options.arg_budget = c_.sequences.arg_budget;
    options.seed = c_.seed;
    options.exec = exec_;
    const auto ex = seqgen::explore_sequences(program_, api, options);
    for (Format f : c_.formats) {
      out_.files[api.state + ".sequences." + std::string(extension(f))] =
          emit_sequences(program_, api, ex, f, exec_);
    }
    out_.files[api.state + ".states.dot"] = seqgen::graph_to_dot(ex.graph);
    std::size_t violations = 0;
    const auto failures = ex.failures();
    for (const auto& s : failures) violations += is_violation(s.status) ? 1 : 0;
    out_.violations += violations;
    stats_["sequences"] = Json{{"state", api.state},
                               {"sequences", ex.sequences.size()},
                               {"failing", failures.size()},
                               {"violations", violations},
                               {"states", ex.graph.nodes.size()},
                               {"edges", ex.graph.edges.size()}};
    out_.summary.push_back(api.state + ": " + std::to_string(ex.sequences.size()) + " sequences, " +
                           std::to_string(violations) + " violation(s)");
  }

  void compare() {
    const auto cmp = compare_strategies(program_, c_.function, c_);
    out_.files[c_.function + ".compare.json"] = comparison_json(cmp);
    out_.summary.push_back(comparison_text(cmp));
    Json rows = Json::array();
    for (const auto& s : cmp.strategies) rows.push_back(s.name);
    stats_["compare"] = Json{{"function", c_.function}, {"strategies", rows}};
    for (const auto& s : cmp.strategies) out_.violations += s.violations;
  }

  const RunConfig& c_;
  lang::ExecOptions exec_;
  lang::Program program_;
  Json stats_ = Json::object();
  Artifacts out_;
};

void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp.string() + ": cannot write file");
    out << content;
    if (!out.flush()) throw std::runtime_error(tmp.string() + ": write failed");
  }
  fs::rename(tmp, path);
}

}  // namespace

bool is_violation(concolic::Verdict v) {
  return v == concolic::Verdict::kContractViolation || v == concolic::Verdict::kCheckViolation;
}

bool is_violation(seqgen::SequenceStatus s) {
  using seqgen::SequenceStatus;
  return s == SequenceStatus::kInvariantViolated || s == SequenceStatus::kContractViolation ||
         s == SequenceStatus::kCheckViolation;
}

seqgen::ApiSpec api_of(const RunConfig& c) {
  seqgen::ApiSpec api;
  api.state = c.sequences.state;
  api.invariant = c.sequences.invariant;
  api.init = c.sequences.init;
  for (const auto& name : c.sequences.operations) {
    seqgen::Operation op;
    op.function = name;
    if (auto it = c.sequences.ranges.find(name); it != c.sequences.ranges.end()) {
      for (const auto& r : it->second) op.args.push_back(randgen::Domain::Int(r.lo, r.hi));
    }
    api.operations.push_back(std::move(op));
  }
  for (const auto& [name, ranges] : c.sequences.ranges) {
    if (std::find(c.sequences.operations.begin(), c.sequences.operations.end(), name) ==
        c.sequences.operations.end()) {
      throw ConfigError("range for '" + name + "' names no listed operation");
    }
  }
  return api;
}

std::string emit_sequences(const lang::Program& program, const seqgen::ApiSpec& api,
                           const seqgen::SequenceExploration& ex, Format format, const lang::ExecOptions& exec) {
  using seqgen::SequenceStatus;
  struct Row {
    std::string mark, calls, state, message;
    const seqgen::Sequence* seq;
  };
  std::vector<Row> rows;
  for (const auto& seq : ex.sequences) {
    const auto again = seqgen::replay(program, api, seq.calls, exec);
    if (again.status != seq.status) {
      throw ReplayMismatch("sequence '" + seqgen::to_string(seq) + "': stored " +
                           std::string(seqgen::to_string(seq.status)) + ", replay gives " +
                           std::string(seqgen::to_string(again.status)));
    }
    Row r;
    r.mark = seq.status == SequenceStatus::kOk              ? "OK"
             : seq.status == SequenceStatus::kBoundExceeded ? "BOUND"
                                                             : "FAIL";
    r.calls = seqgen::to_string(seq);
    r.state = ex.graph.nodes.at(seq.state).canonical;
    r.message = seq.failing() ? std::string(seqgen::to_string(seq.status)) : "";
    r.seq = &seq;
    rows.push_back(std::move(r));
  }
  const std::vector<std::string> columns = {"Result", "sequence", "state", "message"};
  std::ostringstream os;
  if (format == Format::kJson) {
    Json list = Json::array();
    for (const auto& r : rows) {
      Json calls = Json::array();
      for (const auto& call : r.seq->calls) {
        Json args = Json::array();
        for (const auto& a : call.args) args.push_back(a.to_string());
        calls.push_back(Json{{"op", call.op}, {"args", args}});
      }
      list.push_back(Json{{"mark", r.mark},
                          {"calls", calls},
                          {"status", std::string(seqgen::to_string(r.seq->status))},
                          {"state", r.state},
                          {"message", r.message}});
    }
    os << Json{{"state", api.state}, {"invariant", api.invariant}, {"columns", columns}, {"sequences", list}}.dump(2)
       << "\n";
  } else if (format == Format::kCsv) {
    os << "Result,sequence,state,message,status\n";
    for (const auto& r : rows) {
      os << csv_field(r.mark) << ',' << csv_field(r.calls) << ',' << csv_field(r.state) << ','
         << csv_field(r.message) << ',' << csv_field(seqgen::to_string(r.seq->status)) << '\n';
    }
  } else {
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    for (const auto& r : rows) {
      width[0] = std::max(width[0], r.mark.size());
      width[1] = std::max(width[1], r.calls.size());
      width[2] = std::max(width[2], r.state.size());
    }
    const auto line = [&](const std::vector<std::string>& cells) {
      std::string text;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) text += "  ";
        text += cells[i];
        if (i + 1 < cells.size()) text.append(width[i] - cells[i].size(), ' ');
      }
      text.erase(text.find_last_not_of(' ') + 1);
      os << text << '\n';
    };
    line(columns);
    line({std::string(width[0], '-'), std::string(width[1], '-'), std::string(width[2], '-'),
          std::string(columns[3].size(), '-')});
    for (const auto& r : rows) line({r.mark, r.calls, r.state, r.message});
  }
  return os.str();
}

Artifacts produce(const RunConfig& config) {
  validate(config);
  return Producer(config).produce();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Artifacts artifacts;
  try {
    artifacts = produce(config);
  } catch (const std::exception& e) {
    err << "testforge: " << e.what() << "\n";
    return kExitError;
  }
  try {
    fs::create_directories(config.out_dir);
    for (const auto& [name, content] : artifacts.files) {
      write_atomically(fs::path(config.out_dir) / name, content);
    }
  } catch (const std::exception& e) {
    err << "testforge: " << e.what() << "\n";
    return kExitError;
  }
  for (const auto& line : artifacts.summary) out << line << (line.ends_with('\n') ? "" : "\n");
  out << "wrote " << artifacts.files.size() << " file(s) to " << config.out_dir << "\n";
  return artifacts.violations > 0 ? kExitFindings : kExitClean;
}

}  // namespace testforge::harness
