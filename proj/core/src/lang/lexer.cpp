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

#include "lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace testforge::lang::detail {

std::string_view spelling(Tok t) {
  switch (t) {
    case Tok::kEof: return "end of input";
    case Tok::kIdent: return "identifier";
    case Tok::kInt: return "integer literal";
    case Tok::kStruct: return "'struct'";
    case Tok::kIntKw: return "'int'";
    case Tok::kBoolKw: return "'bool'";
    case Tok::kVoidKw: return "'void'";
    case Tok::kIf: return "'if'";
    case Tok::kElse: return "'else'";
    case Tok::kWhile: return "'while'";
    case Tok::kReturn: return "'return'";
    case Tok::kCheck: return "'check'";
    case Tok::kTrue: return "'true'";
    case Tok::kFalse: return "'false'";
    case Tok::kNull: return "'null'";
    case Tok::kNew: return "'new'";
    case Tok::kRequires: return "'requires'";
    case Tok::kEnsures: return "'ensures'";
    case Tok::kResult: return "'result'";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kSemi: return "';'";
    case Tok::kComma: return "','";
    case Tok::kDot: return "'.'";
    case Tok::kAssign: return "'='";
    case Tok::kPlusAssign: return "'+='";
    case Tok::kMinusAssign: return "'-='";
    case Tok::kPlus: return "'+'";
    case Tok::kMinus: return "'-'";
    case Tok::kStar: return "'*'";
    case Tok::kSlash: return "'/'";
    case Tok::kPercent: return "'%'";
    case Tok::kLt: return "'<'";
    case Tok::kLe: return "'<='";
    case Tok::kGt: return "'>'";
    case Tok::kGe: return "'>='";
    case Tok::kEq: return "'=='";
    case Tok::kNe: return "'!='";
    case Tok::kAndAnd: return "'&&'";
    case Tok::kOrOr: return "'||'";
    case Tok::kBang: return "'!'";
    case Tok::kError: return "invalid token";
  }
  return "?";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> kMap = {
      {"struct", Tok::kStruct}, {"int", Tok::kIntKw},       {"bool", Tok::kBoolKw},
      {"void", Tok::kVoidKw},   {"if", Tok::kIf},           {"else", Tok::kElse},
      {"while", Tok::kWhile},   {"return", Tok::kReturn},   {"check", Tok::kCheck},
      {"true", Tok::kTrue},     {"false", Tok::kFalse},     {"null", Tok::kNull},
      {"new", Tok::kNew},       {"requires", Tok::kRequires}, {"ensures", Tok::kEnsures},
      {"result", Tok::kResult},
  };
  return kMap;
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok kind, std::size_t len, SourceLoc loc) {
    out.push_back(Token{kind, std::string(src.substr(i, len)), 0, loc});
    advance(len);
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      SourceLoc start{line, col};
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
      if (i + 1 >= src.size()) {
        out.push_back(Token{Tok::kError, "unterminated comment", 0, start});
        return out;
      }
      advance(2);
      continue;
    }
    SourceLoc loc{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string_view word = src.substr(i, j - i);
      auto kw = keywords().find(word);
      push(kw == keywords().end() ? Tok::kIdent : kw->second, j - i, loc);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::int64_t v = 0;
      bool too_big = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        v = v * 10 + (src[j] - '0');
        if (v > 2147483648LL) too_big = true;
        ++j;
      }
      if (too_big) {
        out.push_back(Token{Tok::kError, "integer literal out of 32-bit range", 0, loc});
        return out;
      }
      Token t{Tok::kInt, std::string(src.substr(i, j - i)), v, loc};
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < src.size() && src[i + 1] == b; };
    if (two('+', '=')) { push(Tok::kPlusAssign, 2, loc); continue; }
    if (two('-', '=')) { push(Tok::kMinusAssign, 2, loc); continue; }
    if (two('<', '=')) { push(Tok::kLe, 2, loc); continue; }
    if (two('>', '=')) { push(Tok::kGe, 2, loc); continue; }
    if (two('=', '=')) { push(Tok::kEq, 2, loc); continue; }
    if (two('!', '=')) { push(Tok::kNe, 2, loc); continue; }
    if (two('&', '&')) { push(Tok::kAndAnd, 2, loc); continue; }
    if (two('|', '|')) { push(Tok::kOrOr, 2, loc); continue; }
    Tok single = Tok::kError;
    switch (c) {
      case '{': single = Tok::kLBrace; break;
      case '}': single = Tok::kRBrace; break;
      case '(': single = Tok::kLParen; break;
      case ')': single = Tok::kRParen; break;
      case ';': single = Tok::kSemi; break;
      case ',': single = Tok::kComma; break;
      case '.': single = Tok::kDot; break;
      case '=': single = Tok::kAssign; break;
      case '+': single = Tok::kPlus; break;
      case '-': single = Tok::kMinus; break;
      case '*': single = Tok::kStar; break;
      case '/': single = Tok::kSlash; break;
      case '%': single = Tok::kPercent; break;
      case '<': single = Tok::kLt; break;
      case '>': single = Tok::kGt; break;
      case '!': single = Tok::kBang; break;
      default: break;
    }
    if (single == Tok::kError) {
      out.push_back(Token{Tok::kError, std::string("unexpected character '") + c + "'", 0, loc});
      return out;
    }
    push(single, 1, loc);
  }
  out.push_back(Token{Tok::kEof, "", 0, SourceLoc{line, col}});
  return out;
}

}  // namespace testforge::lang::detail
