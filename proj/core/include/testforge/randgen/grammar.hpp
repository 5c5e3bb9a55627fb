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

// Context-free grammars over quoted terminals, with exhaustive enumeration by
// derivation depth and random sampling.
//
// Text form, one production per line ('|' separates alternatives, '#'
// starts a comment, the first left-hand side is the start symbol):
//
//   S ::= "a"
//   S ::= "(" S ")"

#ifndef TESTFORGE_RANDGEN_GRAMMAR_HPP_
#define TESTFORGE_RANDGEN_GRAMMAR_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace testforge::randgen {

class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Symbol {
  bool terminal = false;
  std::string text;  // terminal literal or nonterminal name

  bool operator==(const Symbol&) const = default;
};

struct Production {
  std::string lhs;
  std::vector<Symbol> rhs;

  bool operator==(const Production&) const = default;
};

struct Grammar {
  std::string start;
  std::vector<std::string> nonterminals;  // first-definition order
  std::vector<Production> productions;    // file order

  std::vector<std::size_t> productions_of(std::string_view nonterminal) const;
  bool operator==(const Grammar&) const = default;
};

// Throws GrammarError on syntax errors, undefined nonterminals or an empty
// grammar.
Grammar parse_grammar(std::string_view text);
std::string to_text(const Grammar& g);

struct Enumeration {
  std::vector<std::string> strings;
  bool truncated = false;
};

// Every string with a derivation tree of depth <= max_depth (a production
// with no nonterminals has depth 1), ordered by the production indices of the
// derivation in preorder. Strings derived twice appear once. Stops at `cap`
// strings and sets `truncated`.
Enumeration enumerate(const Grammar& g, std::size_t max_depth, std::size_t cap = 1'000'000);

// `count` random derivations: productions are chosen uniformly among those
// that can still finish within max_depth. Throws GrammarError if the start
// symbol needs more depth than max_depth.
std::vector<std::string> sample(const Grammar& g, std::uint64_t seed, std::size_t count, std::size_t max_depth);

// Smallest derivation depth of each nonterminal (SIZE_MAX if none finishes).
std::vector<std::size_t> min_depths(const Grammar& g);

}  // namespace testforge::randgen

#endif  // TESTFORGE_RANDGEN_GRAMMAR_HPP_
