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

#include "testforge/harness/compare.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "testforge/concolic/concolic.hpp"

namespace testforge::harness {
namespace {

using concolic::TestCase;
using Json = nlohmann::json;

std::string where(const lang::Program& program, lang::NodeId id) {
  const auto& loc = program.nodes.at(static_cast<std::size_t>(id)).loc;
  return std::to_string(loc.line) + ":" + std::to_string(loc.col);
}

const lang::FunctionDef& function_or_throw(const lang::Program& program, std::string_view fn) {
  const lang::FunctionDef* def = program.find_function(fn);
  if (def == nullptr) throw ConfigError("unknown function '" + std::string(fn) + "'");
  return *def;
}

bool requires_holds(const lang::Program& program, std::string_view fn, const lang::CallInput& in,
                    const lang::ExecOptions& exec) {
  const auto r = lang::eval_contract(program, fn, lang::ContractKind::kRequires, in.args, in.heap,
                                     lang::Value::Void(), exec);
  // No clause counts as satisfied.
  return !program.find_function(fn)->requires_clause || r.holds.value_or(false);
}

std::vector<TestCase> korat_cases(const lang::Program& program, std::string_view fn, const RunConfig& c) {
  const auto& def = function_or_throw(program, fn);
  const auto structures = korat_structures(program, c);
  if (structures.empty()) throw ConfigError("korat strategy needs a predicate and finitization");
  const auto fin = heapgen::finitize(program, c.korat.finitization);
  if (def.params.size() != 1 || def.params[0].type.kind != lang::TypeKind::kRecord ||
      def.params[0].type.record != fin.root) {
    throw ConfigError("korat strategy needs '" + std::string(fn) + "' to take a single " + fin.root);
  }
  const auto exec = exec_options(c);
  std::vector<TestCase> out;
  for (const auto& s : structures) {
    lang::CallInput in;
    in.args.push_back(heapgen::copy_into(s, in.heap));
    if (!requires_holds(program, fn, in, exec)) continue;
    out.push_back(concolic::run_case(program, fn, in, "korat", exec));
  }
  return out;
}

}  // namespace

lang::CoverageReport replay_coverage(const lang::Program& program, std::string_view fn,
                                     std::span<const TestCase> cases, const lang::ExecOptions& exec) {
  std::vector<lang::Trace> traces;
  traces.reserve(cases.size());
  for (const auto& tc : cases) {
    traces.push_back(lang::eval_call(program, fn, tc.input.args, tc.input.heap, exec).trace);
  }
  return lang::coverage_of(program, fn, traces);
}

std::string coverage_json(const lang::Program& program, const lang::CoverageReport& r) {
  Json statements = Json::array();
  for (auto id : r.statements_covered) statements.push_back(where(program, id));
  Json branches = Json::array();
  for (const auto& [id, side] : r.branch_sides_covered) {
    branches.push_back(where(program, id) + (side ? " true" : " false"));
  }
  Json checks = Json::array();
  for (const auto& [id, held] : r.check_obligations_covered) {
    checks.push_back(where(program, id) + (held ? " held" : " failed"));
  }
  // Ratios are printed with fixed precision so the file is stable.
  const auto ratio = [](std::size_t a, std::size_t b) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << (b == 0 ? 1.0 : static_cast<double>(a) / static_cast<double>(b));
    return os.str();
  };
  Json doc{
      {"function", r.function},
      {"statements",
       Json{{"covered", r.statements_covered.size()},
            {"total", r.statements_total},
            {"ratio", ratio(r.statements_covered.size(), r.statements_total)},
            {"locations", statements}}},
      {"branches",
       Json{{"covered", r.branch_sides_covered.size()},
            {"total", r.branch_sides_total},
            {"ratio", ratio(r.branch_sides_covered.size(), r.branch_sides_total)},
            {"locations", branches}}},
      {"checks",
       Json{{"covered", r.check_obligations_covered.size()},
            {"total", r.check_obligations_total},
            {"locations", checks}}},
      {"paths", r.paths.size()},
  };
  return doc.dump(2) + "\n";
}

std::vector<heapgen::Structure> korat_structures(const lang::Program& program, const RunConfig& c) {
  if (c.korat.predicate.empty() || c.korat.finitization.empty()) return {};
  heapgen::GenerateOptions options;
  options.prune = c.korat.prune;
  options.max_candidates = c.korat.max_candidates;
  return heapgen::generate(program, c.korat.predicate, heapgen::finitize(program, c.korat.finitization), options)
      .structures;
}

randgen::Domains random_domains(const lang::Program& program, std::string_view fn, const RunConfig& c,
                                const std::vector<heapgen::Structure>& structures) {
  const auto& def = function_or_throw(program, fn);
  randgen::Domains domains = randgen::default_domains(program, fn);
  std::string root;
  if (!structures.empty()) root = heapgen::finitize(program, c.korat.finitization).root;
  for (std::size_t i = 0; i < def.params.size(); ++i) {
    const auto& type = def.params[i].type;
    if (type.kind == lang::TypeKind::kRecord && type.record == root) {
      domains[i] = randgen::Domain::Structures(structures);
    }
  }
  for (const auto& [name, range] : c.random.ranges) {
    const auto dot = name.find('.');
    const std::string param = name.substr(0, dot);
    bool found = false;
    for (std::size_t i = 0; i < def.params.size() && !found; ++i) {
      if (def.params[i].name != param) continue;
      auto& d = domains[i];
      if (dot == std::string::npos && d.kind == randgen::DomainKind::kInt) {
        d = randgen::Domain::Int(range.lo, range.hi);
        found = true;
      } else if (dot != std::string::npos && d.kind == randgen::DomainKind::kRecord) {
        for (auto& f : d.fields) {
          if (f.name == name.substr(dot + 1) && f.domain.kind == randgen::DomainKind::kInt) {
            f.domain = randgen::Domain::Int(range.lo, range.hi);
            found = true;
          }
        }
      }
    }
    if (!found) throw ConfigError("range '" + name + "' names no int input of " + std::string(fn));
  }
  return domains;
}

std::vector<TestCase> strategy_cases(const lang::Program& program, std::string_view fn, std::string_view strategy,
                                     const RunConfig& c) {
  function_or_throw(program, fn);
  const auto exec = exec_options(c);
  if (strategy == "concolic") {
    auto limits = c.explore;
    limits.step_budget = c.step_budget;
    return concolic::explore(program, fn, limits).cases;
  }
  if (strategy == "random") {
    const auto domains = random_domains(program, fn, c, korat_structures(program, c));
    const auto batch = randgen::gen_random(program, fn, domains, c.seed, c.random.trials);
    std::vector<TestCase> out;
    out.reserve(batch.inputs.size());
    for (std::size_t i = 0; i < batch.inputs.size(); ++i) {
      out.push_back(concolic::run_case(program, fn, batch.inputs[i], batch.boundary[i] ? "boundary" : "random", exec));
    }
    return out;
  }
  if (strategy == "korat") return korat_cases(program, fn, c);
  throw ConfigError("unknown strategy '" + std::string(strategy) + "'");
}

Comparison compare_strategies(const lang::Program& program, std::string_view fn, const RunConfig& c) {
  if (c.strategies.size() < 2) throw ConfigError("comparison needs at least 2 strategies");
  Comparison out;
  out.function = std::string(fn);
  const auto exec = exec_options(c);
  for (const auto& name : c.strategies) {
    const auto start = std::chrono::steady_clock::now();
    const auto cases = strategy_cases(program, fn, name, c);
    const auto stop = std::chrono::steady_clock::now();
    const auto cov = replay_coverage(program, fn, cases, exec);
    StrategyResult r;
    r.name = name;
    r.cases = cases.size();
    r.branches_covered = cov.branch_sides_covered.size();
    r.branches_total = cov.branch_sides_total;
    r.statements_covered = cov.statements_covered.size();
    r.statements_total = cov.statements_total;
    r.paths = cov.paths.size();
    for (const auto& tc : cases) {
      r.findings += concolic::is_finding(tc.verdict) ? 1 : 0;
      r.violations += tc.verdict == concolic::Verdict::kContractViolation ||
                      tc.verdict == concolic::Verdict::kCheckViolation;
    }
    r.wall_seconds = std::chrono::duration<double>(stop - start).count();
    out.strategies.push_back(std::move(r));
  }
  return out;
}

std::string comparison_json(const Comparison& c) {
  Json rows = Json::array();
  for (const auto& s : c.strategies) {
    rows.push_back(Json{{"strategy", s.name},
                        {"cases", s.cases},
                        {"branches", Json{{"covered", s.branches_covered}, {"total", s.branches_total}}},
                        {"statements", Json{{"covered", s.statements_covered}, {"total", s.statements_total}}},
                        {"paths", s.paths},
                        {"findings", s.findings}});
  }
  return Json{{"function", c.function}, {"strategies", rows}}.dump(2) + "\n";
}

std::string comparison_text(const Comparison& c) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "strategy" << std::setw(8) << "cases" << std::setw(11) << "branches"
     << std::setw(12) << "statements" << std::setw(7) << "paths" << std::setw(10) << "findings"
     << "wall\n";
  for (const auto& s : c.strategies) {
    os << std::setw(10) << s.name << std::setw(8) << s.cases << std::setw(11)
       << (std::to_string(s.branches_covered) + "/" + std::to_string(s.branches_total)) << std::setw(12)
       << (std::to_string(s.statements_covered) + "/" + std::to_string(s.statements_total)) << std::setw(7)
       << s.paths << std::setw(10) << s.findings << std::fixed << std::setprecision(3) << s.wall_seconds << "s\n";
  }
  return os.str();
}

}  // namespace testforge::harness
