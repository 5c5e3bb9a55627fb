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

#ifndef TESTFORGE_HARNESS_RUN_HPP_
#define TESTFORGE_HARNESS_RUN_HPP_

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "testforge/concolic/test_case.hpp"
#include "testforge/harness/config.hpp"
#include "testforge/seqgen/seqgen.hpp"

namespace testforge::harness {

inline constexpr int kExitClean = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitError = 2;

// Verdicts that make a run exit with kExitFindings. Runtime errors and
// exhausted bounds are reported in the tables but are not findings here.
bool is_violation(concolic::Verdict v);
bool is_violation(seqgen::SequenceStatus s);

// Everything a run produces, keyed by file name relative to the output
// directory.
struct Artifacts {
  std::map<std::string, std::string> files;
  std::size_t violations = 0;
  std::vector<std::string> summary;  // human-readable lines for the console
};

// Computes all artifacts in memory. Throws ConfigError, std::runtime_error or
// std::invalid_argument on a usage or input problem.
Artifacts produce(const RunConfig& config);

// Sequence results in the test-table layout.
std::string emit_sequences(const lang::Program& program, const seqgen::ApiSpec& api,
                           const seqgen::SequenceExploration& exploration, Format format,
                           const lang::ExecOptions& exec = {});

seqgen::ApiSpec api_of(const RunConfig& config);

// Validates, produces and writes the artifacts. Nothing is written unless
// every step succeeds. Returns kExitClean, kExitFindings or kExitError.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace testforge::harness

#endif  // TESTFORGE_HARNESS_RUN_HPP_
