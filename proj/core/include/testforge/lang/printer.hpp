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

#ifndef TESTFORGE_LANG_PRINTER_HPP_
#define TESTFORGE_LANG_PRINTER_HPP_

#include <string>

#include "testforge/lang/ast.hpp"

namespace testforge::lang {

// Canonical concrete syntax. Binary subexpressions are fully parenthesized,
// so parse(print(p)) is structurally equal to p.
std::string print(const Program& program);
std::string print(const Expr& expr);

}  // namespace testforge::lang

#endif  // TESTFORGE_LANG_PRINTER_HPP_
