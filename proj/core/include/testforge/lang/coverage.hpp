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

#ifndef TESTFORGE_LANG_COVERAGE_HPP_
#define TESTFORGE_LANG_COVERAGE_HPP_

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "testforge/lang/ast.hpp"
#include "testforge/lang/interpreter.hpp"

namespace testforge::lang {

// Statement, branch-side, path and check-obligation tallies for a function
// and everything it calls.
struct CoverageReport {
  std::string function;
  std::set<NodeId> statements_covered;
  std::size_t statements_total = 0;
  std::set<std::pair<NodeId, bool>> branch_sides_covered;
  std::size_t branch_sides_total = 0;
  std::set<PathSignature> paths;
  // Dual obligation per check: one run where it held and one where it failed.
  std::set<std::pair<NodeId, bool>> check_obligations_covered;
  std::size_t check_obligations_total = 0;

  double statement_ratio() const;
  double branch_ratio() const;
  bool operator==(const CoverageReport&) const = default;
};

class MalformedTraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws MalformedTraceError if a trace names a location that is not a
// statement, decision or check of fn's call closure.
CoverageReport coverage_of(const Program& program, std::string_view fn, std::span<const Trace> traces);

}  // namespace testforge::lang

#endif  // TESTFORGE_LANG_COVERAGE_HPP_
