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

#ifndef TESTFORGE_HARNESS_COMPARE_HPP_
#define TESTFORGE_HARNESS_COMPARE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/concolic/test_case.hpp"
#include "testforge/harness/config.hpp"
#include "testforge/heapgen/heapgen.hpp"
#include "testforge/lang/coverage.hpp"
#include "testforge/randgen/random.hpp"

namespace testforge::harness {

// Coverage of fn by the cases, each replayed under exec.
lang::CoverageReport replay_coverage(const lang::Program& program, std::string_view fn,
                                     std::span<const concolic::TestCase> cases, const lang::ExecOptions& exec);

// Totals, ratios and the covered locations as line:col strings.
std::string coverage_json(const lang::Program& program, const lang::CoverageReport& report);

// Structures of the configured finitization, or an empty list when none is
// configured.
std::vector<heapgen::Structure> korat_structures(const lang::Program& program, const RunConfig& config);

// fn's default domains narrowed by the configured ranges ("x", "p.x").
// Parameters of the finitization's root record draw from `structures` when
// that list is non-empty. Throws ConfigError for a range naming no slot.
randgen::Domains random_domains(const lang::Program& program, std::string_view fn, const RunConfig& config,
                                const std::vector<heapgen::Structure>& structures = {});

// Test cases produced by one strategy: "concolic", "random" or "korat".
// Throws ConfigError when the strategy cannot drive fn.
std::vector<concolic::TestCase> strategy_cases(const lang::Program& program, std::string_view fn,
                                               std::string_view strategy, const RunConfig& config);

struct StrategyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t branches_covered = 0;
  std::size_t branches_total = 0;
  std::size_t statements_covered = 0;
  std::size_t statements_total = 0;
  std::size_t paths = 0;
  std::size_t findings = 0;    // cases whose verdict is a finding
  std::size_t violations = 0;  // the contract and check failures among them
  double wall_seconds = 0;
};

struct Comparison {
  std::string function;
  std::vector<StrategyResult> strategies;
};

// Runs each configured strategy on fn and measures its cases with the same
// replay semantics. Throws ConfigError for fewer than 2 strategies.
Comparison compare_strategies(const lang::Program& program, std::string_view fn, const RunConfig& config);

// Wall times are left out of the JSON so reruns compare equal.
std::string comparison_json(const Comparison& c);
std::string comparison_text(const Comparison& c);

}  // namespace testforge::harness

#endif  // TESTFORGE_HARNESS_COMPARE_HPP_
