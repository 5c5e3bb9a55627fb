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

#ifndef TESTFORGE_HARNESS_TABLE_HPP_
#define TESTFORGE_HARNESS_TABLE_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/concolic/test_case.hpp"
#include "testforge/harness/config.hpp"
#include "testforge/lang/ast.hpp"

namespace testforge::harness {

// OK for Pass, BOUND for BoundExceeded, FAIL otherwise.
std::string_view mark(concolic::Verdict v);

struct TableRow {
  std::string mark;
  std::vector<std::string> inputs;  // one rendered value per parameter
  std::string output;               // return value, exception name or "-"
  std::string message;              // empty for passing rows
  concolic::TestCase test;

  bool operator==(const TableRow&) const = default;
};

struct TestTable {
  std::string function;
  // "Result", the parameter names, "return value", "message".
  std::vector<std::string> columns;
  std::vector<TableRow> rows;

  bool operator==(const TestTable&) const = default;
};

// Thrown when a case's stored verdict or path disagrees with a fresh replay.
class ReplayMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replays every case and renders it. Throws std::invalid_argument for an
// unknown function and ReplayMismatch when a stored verdict is stale.
TestTable make_table(const lang::Program& program, std::string_view fn, std::span<const concolic::TestCase> cases,
                     const lang::ExecOptions& exec = {});

std::string render(const TestTable& table, Format format);

// make_table followed by render.
std::string emit_table(const lang::Program& program, std::string_view fn,
                       std::span<const concolic::TestCase> cases, Format format,
                       const lang::ExecOptions& exec = {});

// Reads the cases back from JSON output. Throws std::invalid_argument on
// malformed input.
std::vector<concolic::TestCase> parse_table_json(std::string_view json);

// Field-wise CSV quoting: fields with commas, quotes or newlines are quoted.
std::string csv_field(std::string_view text);

}  // namespace testforge::harness

#endif  // TESTFORGE_HARNESS_TABLE_HPP_
