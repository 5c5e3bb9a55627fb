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

// Generated test cases and their verdicts, shared by every strategy.

#ifndef TESTFORGE_CONCOLIC_TEST_CASE_HPP_
#define TESTFORGE_CONCOLIC_TEST_CASE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "testforge/lang/inputs.hpp"
#include "testforge/lang/interpreter.hpp"

namespace testforge::concolic {

enum class Verdict : std::uint8_t { kPass, kContractViolation, kCheckViolation, kRuntimeError, kBoundExceeded };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);
// Findings are what the tool reports as bugs; bound hits are not findings.
bool is_finding(Verdict v);

struct TestCase {
  std::string function;
  lang::CallInput input;
  lang::Outcome outcome;
  Verdict verdict = Verdict::kPass;
  std::string provenance;  // "concolic", "random", "boundary", "korat", "sequence", ...
  lang::PathSignature signature;

  bool operator==(const TestCase&) const = default;
};

// Verdict of a finished run. Precedence: failed check (recorded or strict),
// runtime error, bound exceeded, violated ensures, pass.
Verdict classify(const lang::Program& program, std::string_view fn, const lang::CallInput& input,
                 const lang::ExecutionResult& result, const lang::ExecOptions& options = {});

// Executes the input and builds a test case from the run.
TestCase run_case(const lang::Program& program, std::string_view fn, const lang::CallInput& input,
                  std::string provenance, const lang::ExecOptions& options = {});

// Re-executes `tc` and reports whether outcome, signature and verdict match.
bool replays(const lang::Program& program, const TestCase& tc, const lang::ExecOptions& options = {});

}  // namespace testforge::concolic

#endif  // TESTFORGE_CONCOLIC_TEST_CASE_HPP_
