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

#include "testforge/lang/coverage.hpp"

#include <algorithm>

namespace testforge::lang {

double CoverageReport::statement_ratio() const {
  return statements_total == 0 ? 1.0 : static_cast<double>(statements_covered.size()) / statements_total;
}

double CoverageReport::branch_ratio() const {
  return branch_sides_total == 0 ? 1.0 : static_cast<double>(branch_sides_covered.size()) / branch_sides_total;
}

CoverageReport coverage_of(const Program& program, std::string_view fn, std::span<const Trace> traces) {
  int index = program.function_index(fn);
  if (index < 0) throw std::invalid_argument("unknown function '" + std::string(fn) + "'");
  std::vector<int> closure = program.reachable_functions(index);
  auto in_closure = [&](const NodeInfo& info) {
    return !info.in_contract && std::binary_search(closure.begin(), closure.end(), info.function);
  };

  CoverageReport report;
  report.function = std::string(fn);
  for (const NodeInfo& info : program.nodes) {
    if (!in_closure(info)) continue;
    if (info.site == SiteKind::kStatement) ++report.statements_total;
    if (info.decision) report.branch_sides_total += 2;
    if (info.check) report.check_obligations_total += 2;
  }

  auto node = [&](NodeId id) -> const NodeInfo& {
    if (id < 0 || static_cast<std::size_t>(id) >= program.nodes.size() ||
        !in_closure(program.nodes[static_cast<std::size_t>(id)])) {
      throw MalformedTraceError("trace references unknown location " + std::to_string(id));
    }
    return program.nodes[static_cast<std::size_t>(id)];
  };

  for (const Trace& t : traces) {
    for (NodeId s : t.statements) {
      if (node(s).site != SiteKind::kStatement) {
        throw MalformedTraceError("trace location " + std::to_string(s) + " is not a statement");
      }
      report.statements_covered.insert(s);
    }
    for (const TraceEvent& e : t.events) {
      const NodeInfo& info = node(e.location);
      if (e.kind == EventKind::kBranch) {
        if (!info.decision) throw MalformedTraceError("trace location " + std::to_string(e.location) + " is not a branch");
        report.branch_sides_covered.insert({e.location, e.value});
      } else {
        if (!info.check) throw MalformedTraceError("trace location " + std::to_string(e.location) + " is not a check");
        report.check_obligations_covered.insert({e.location, e.value});
      }
    }
    report.paths.insert(t.events);
  }
  return report;
}

}  // namespace testforge::lang
