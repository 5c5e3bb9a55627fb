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

#ifndef TESTFORGE_LANG_LOADER_HPP_
#define TESTFORGE_LANG_LOADER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/lang/ast.hpp"
#include "testforge/lang/diagnostics.hpp"

namespace testforge::lang {

struct LoadResult {
  std::optional<Program> program;
  std::vector<std::string> errors;  // formatted file:line:col diagnostics
};

// Parses and typechecks source text.
LoadResult load_source(std::string_view source, const std::string& name);

// Reads, concatenates and loads several .mini files as one program.
LoadResult load_files(const std::vector<std::string>& paths);

// Test and tool convenience: loads or throws std::runtime_error with the
// formatted diagnostics.
Program load_or_throw(std::string_view source, const std::string& name = "<input>");
Program load_file_or_throw(const std::string& path);

}  // namespace testforge::lang

#endif  // TESTFORGE_LANG_LOADER_HPP_
