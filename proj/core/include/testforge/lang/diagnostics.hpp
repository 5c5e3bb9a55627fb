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

#ifndef TESTFORGE_LANG_DIAGNOSTICS_HPP_
#define TESTFORGE_LANG_DIAGNOSTICS_HPP_

#include <string>
#include <vector>

#include "testforge/lang/ast.hpp"

namespace testforge::lang {

struct Diagnostic {
  SourceLoc loc;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

// Renders "file:line:col: message".
std::string format_diagnostic(const std::string& file, const Diagnostic& d);

}  // namespace testforge::lang

#endif  // TESTFORGE_LANG_DIAGNOSTICS_HPP_
