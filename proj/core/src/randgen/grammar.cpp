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

#include "testforge/randgen/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <random>
#include <unordered_set>

#include "testforge/randgen/random.hpp"

namespace testforge::randgen {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw GrammarError("grammar line " + std::to_string(line) + ": " + msg);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::size_t index_of(const Grammar& g, const std::string& nt) {
  return static_cast<std::size_t>(std::find(g.nonterminals.begin(), g.nonterminals.end(), nt) - g.nonterminals.begin());
}

class Enumerator {
 public:
  Enumerator(const Grammar& g, std::size_t cap) : g_(g), cap_(cap) {}

  const std::vector<std::string>& gen(const std::string& nt, std::size_t depth) {
    auto key = std::make_pair(index_of(g_, nt), depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    if (depth > 0) {
      for (std::size_t p : g_.productions_of(nt)) {
        const auto& rhs = g_.productions[p].rhs;
        std::vector<const std::vector<std::string>*> parts;
        bool empty = false;
        for (const auto& s : rhs)
          if (!s.terminal) {
            parts.push_back(&gen(s.text, depth - 1));
            empty = empty || parts.back()->empty();
          }
        if (empty) continue;
        // Odometer over the children's lists, leftmost child slowest.
        std::vector<std::size_t> at(parts.size(), 0);
        while (true) {
          std::string s;
          for (std::size_t i = 0, k = 0; i < rhs.size(); ++i) {
            if (rhs[i].terminal) {
              s += rhs[i].text;
            } else {
              s += (*parts[k])[at[k]];
              ++k;
            }
          }
          if (seen.insert(s).second) {
            if (out.size() == cap_) {
              truncated = true;
              break;
            }
            out.push_back(std::move(s));
          }
          std::size_t i = parts.size();
          while (i > 0 && ++at[i - 1] == parts[i - 1]->size()) at[--i] = 0;
          if (i == 0) break;
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  bool truncated = false;

 private:
  const Grammar& g_;
  std::size_t cap_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> memo_;
};

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

std::size_t production_depth(const Grammar& g, const Production& p, const std::vector<std::size_t>& md) {
  std::size_t d = 1;
  for (const auto& s : p.rhs)
    if (!s.terminal) {
      std::size_t c = md[index_of(g, s.text)];
      if (c == kNever) return kNever;
      d = std::max(d, c + 1);
    }
  return d;
}

}  // namespace

std::vector<std::size_t> Grammar::productions_of(std::string_view nonterminal) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < productions.size(); ++i)
    if (productions[i].lhs == nonterminal) out.push_back(i);
  return out;
}

Grammar parse_grammar(std::string_view text) {
  Grammar g;
  std::vector<std::pair<std::string, std::size_t>> uses;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t eol = text.find('\n', i);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view ln = text.substr(i, eol - i);
    i = eol + 1;
    std::size_t k = 0;
    auto skip_ws = [&] {
      while (k < ln.size() && std::isspace(static_cast<unsigned char>(ln[k]))) ++k;
      if (k < ln.size() && ln[k] == '#') k = ln.size();
    };
    skip_ws();
    if (k == ln.size()) {
      ++line;
      continue;
    }
    if (!ident_start(ln[k])) fail(line, "expected a nonterminal name");
    std::size_t start = k;
    while (k < ln.size() && ident_char(ln[k])) ++k;
    std::string lhs(ln.substr(start, k - start));
    skip_ws();
    if (ln.substr(k, 3) != "::=") fail(line, "expected '::=' after " + lhs);
    k += 3;
    if (std::find(g.nonterminals.begin(), g.nonterminals.end(), lhs) == g.nonterminals.end()) g.nonterminals.push_back(lhs);
    if (g.start.empty()) g.start = lhs;
    Production prod{lhs, {}};
    while (true) {
      skip_ws();
      if (k == ln.size() || ln[k] == '|') {
        g.productions.push_back(prod);
        prod.rhs.clear();
        if (k == ln.size()) break;
        ++k;
        continue;
      }
      if (ln[k] == '"') {
        std::string lit;
        ++k;
        while (k < ln.size() && ln[k] != '"') {
          if (ln[k] == '\\' && k + 1 < ln.size()) {
            ++k;
            lit += ln[k] == 'n' ? '\n' : ln[k];
          } else {
            lit += ln[k];
          }
          ++k;
        }
        if (k == ln.size()) fail(line, "unterminated string");
        ++k;
        prod.rhs.push_back({true, lit});
      } else if (ident_start(ln[k])) {
        start = k;
        while (k < ln.size() && ident_char(ln[k])) ++k;
        prod.rhs.push_back({false, std::string(ln.substr(start, k - start))});
        uses.emplace_back(prod.rhs.back().text, line);
      } else {
        fail(line, std::string("unexpected '") + ln[k] + "'");
      }
    }
    ++line;
  }
  if (g.productions.empty()) throw GrammarError("grammar has no productions");
  for (const auto& [nt, at] : uses)
    if (std::find(g.nonterminals.begin(), g.nonterminals.end(), nt) == g.nonterminals.end())
      fail(at, "undefined nonterminal '" + nt + "'");
  return g;
}

std::string to_text(const Grammar& g) {
  std::string out;
  for (const auto& p : g.productions) {
    out += p.lhs + " ::=";
    for (const auto& s : p.rhs) out += " " + (s.terminal ? quote(s.text) : s.text);
    out += "\n";
  }
  return out;
}

Enumeration enumerate(const Grammar& g, std::size_t max_depth, std::size_t cap) {
  Enumerator e(g, cap);
  Enumeration out{e.gen(g.start, max_depth), false};
  out.truncated = e.truncated;
  return out;
}

std::vector<std::size_t> min_depths(const Grammar& g) {
  std::vector<std::size_t> md(g.nonterminals.size(), kNever);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      std::size_t d = production_depth(g, p, md);
      std::size_t& cur = md[index_of(g, p.lhs)];
      if (d < cur) {
        cur = d;
        changed = true;
      }
    }
  }
  return md;
}

std::vector<std::string> sample(const Grammar& g, std::uint64_t seed, std::size_t count, std::size_t max_depth) {
  auto md = min_depths(g);
  if (md[index_of(g, g.start)] > max_depth)
    throw GrammarError("start symbol needs depth " +
                       (md[index_of(g, g.start)] == kNever ? std::string("unbounded")
                                                            : std::to_string(md[index_of(g, g.start)])) +
                       ", limit is " + std::to_string(max_depth));
  std::vector<std::size_t> pd;
  for (const auto& p : g.productions) pd.push_back(production_depth(g, p, md));
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  // Explicit stack of (symbol, remaining depth) so deep samples cannot
  // exhaust the call stack.
  for (std::size_t n = 0; n < count; ++n) {
    std::string s;
    std::vector<std::pair<const Symbol*, std::size_t>> stack;
    Symbol start{false, g.start};
    stack.emplace_back(&start, max_depth);
    while (!stack.empty()) {
      auto [sym, budget] = stack.back();
      stack.pop_back();
      if (sym->terminal) {
        s += sym->text;
        continue;
      }
      std::vector<std::size_t> options;
      for (std::size_t p : g.productions_of(sym->text))
        if (pd[p] <= budget) options.push_back(p);
      std::size_t pick = options[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int32_t>(options.size() - 1)))];
      const auto& rhs = g.productions[pick].rhs;
      for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) stack.emplace_back(&*it, budget - 1);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace testforge::randgen
