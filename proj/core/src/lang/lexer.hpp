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

#ifndef TESTFORGE_CORE_SRC_LANG_LEXER_HPP_
#define TESTFORGE_CORE_SRC_LANG_LEXER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/lang/ast.hpp"

namespace testforge::lang::detail {

enum class Tok : std::uint8_t {
  kEof, kIdent, kInt,
  // keywords
  kStruct, kIntKw, kBoolKw, kVoidKw, kIf, kElse, kWhile, kReturn, kCheck, kTrue, kFalse, kNull, kNew,
  kRequires, kEnsures, kResult,
  // punctuation
  kLBrace, kRBrace, kLParen, kRParen, kSemi, kComma, kDot,
  kAssign, kPlusAssign, kMinusAssign,
  kPlus, kMinus, kStar, kSlash, kPercent,
  kLt, kLe, kGt, kGe, kEq, kNe, kAndAnd, kOrOr, kBang,
  kError,
};

struct Token {
  Tok kind = Tok::kEof;
  std::string text;
  std::int64_t int_value = 0;  // kInt; may be 2^31 (valid only after unary minus)
  SourceLoc loc;
};

std::string_view spelling(Tok t);

// Tokenizes the whole input. Lexical errors produce a kError token whose text
// is the message; tokenization stops there.
std::vector<Token> tokenize(std::string_view src);

}  // namespace testforge::lang::detail

#endif  // TESTFORGE_CORE_SRC_LANG_LEXER_HPP_
