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

#ifndef TESTFORGE_LANG_PARSER_HPP_
#define TESTFORGE_LANG_PARSER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/lang/ast.hpp"
#include "testforge/lang/diagnostics.hpp"

namespace testforge::lang {

struct ParseResult {
  std::optional<Program> program;  // engaged iff diagnostics is empty
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

// Parses one translation unit. Stops at the first syntax error, reporting the
// offending position and the tokens that would have been accepted there.
ParseResult parse(std::string_view source, std::string source_name = "<input>");

}  // namespace testforge::lang

#endif  // TESTFORGE_LANG_PARSER_HPP_
