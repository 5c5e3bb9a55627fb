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

#include "testforge/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace testforge::harness {
namespace {

constexpr std::string_view kModes[] = {"explore", "korat", "random", "grammar", "sequences", "all", "compare"};
constexpr std::string_view kFormats[] = {"text", "csv", "json"};
constexpr std::string_view kStrategies[] = {"concolic", "random", "korat"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits on commas and whitespace.
std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, std::string base) : text_(text), base_(std::move(base)) {}

  RunConfig parse() {
    std::istringstream in{std::string(text_)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      const std::string_view s = trim(raw);
      if (s.empty() || s.front() == '#' || s.front() == ';') continue;
      if (s.front() == '[') {
        if (s.back() != ']') fail("unterminated section header");
        section_ = std::string(trim(s.substr(1, s.size() - 2)));
        static const std::set<std::string> known = {"explore", "random",    "korat",  "finitization",
                                                    "grammar", "sequences", "compare"};
        if (known.count(section_) == 0) fail("unknown section '" + section_ + "'");
        continue;
      }
      if (section_ == "finitization") {
        config_.korat.finitization += std::string(s) + "\n";
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string_view::npos) fail("expected 'key = value'");
      const std::string key(trim(s.substr(0, eq)));
      const std::string value(trim(s.substr(eq + 1)));
      if (key.empty()) fail("empty key");
      const std::string full = section_.empty() ? key : section_ + "." + key;
      if (!seen_.insert(full).second) fail("duplicate key '" + full + "'");
      assign(key, value);
    }
    return std::move(config_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + msg);
  }

  template <typename T>
  T number(const std::string& v) const {
    T out{};
    std::string_view s = v;
    int base = 10;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
      s.remove_prefix(2);
      base = 16;
    }
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
    if (ec != std::errc() || p != s.data() + s.size()) fail("bad number '" + v + "'");
    return out;
  }

  bool boolean(const std::string& v) const {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail("bad boolean '" + v + "'");
  }

  IntRange range(std::string_view v) const {
    const auto parts = split_list(v);
    if (parts.size() != 2) fail("range needs 'lo hi'");
    IntRange r{number<std::int32_t>(parts[0]), number<std::int32_t>(parts[1])};
    if (r.lo > r.hi) fail("empty range " + parts[0] + " .. " + parts[1]);
    return r;
  }

  std::vector<IntRange> ranges(const std::string& v) const {
    std::vector<IntRange> out;
    std::string_view rest = v;
    while (true) {
      const auto comma = rest.find(',');
      out.push_back(range(trim(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return out;
  }

  std::string path(const std::string& v) const {
    if (base_.empty() || std::filesystem::path(v).is_absolute()) return v;
    return (std::filesystem::path(base_) / v).lexically_normal().string();
  }

  static bool prefixed(const std::string& key, std::string_view prefix, std::string& rest) {
    if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0) return false;
    rest = key.substr(prefix.size());
    return true;
  }

  void assign(const std::string& key, const std::string& v) {
    std::string rest;
    if (section_.empty()) {
      if (key == "mode") {
        const auto m = parse_mode(v);
        if (!m) fail("unknown mode '" + v + "'");
        config_.mode = *m;
      } else if (key == "sources") {
        for (const auto& s : split_list(v)) config_.sources.push_back(path(s));
      } else if (key == "function") {
        config_.function = v;
      } else if (key == "predicate") {
        config_.korat.predicate = v;
      } else if (key == "seed") {
        config_.seed = number<std::uint64_t>(v);
      } else if (key == "out") {
        config_.out_dir = path(v);
      } else if (key == "format") {
        config_.formats.clear();
        for (const auto& f : split_list(v)) {
          const auto parsed = parse_format(f);
          if (!parsed) fail("unknown format '" + f + "'");
          config_.formats.push_back(*parsed);
        }
      } else if (key == "step_budget") {
        config_.step_budget = number<std::uint64_t>(v);
      } else {
        unknown(key);
      }
    } else if (section_ == "explore") {
      auto& e = config_.explore;
      if (key == "max_queries") e.max_queries = number<std::uint32_t>(v);
      else if (key == "path_budget") e.path_budget = number<std::uint32_t>(v);
      else if (key == "solver_nodes") e.solver_nodes = number<std::uint64_t>(v);
      else if (key == "int_range") {
        const IntRange r = range(v);
        e.int_lo = r.lo;
        e.int_hi = r.hi;
      } else if (key == "policy") {
        if (v == "bfs") e.policy = concolic::SearchPolicy::kBreadthFirst;
        else if (v == "dfs") e.policy = concolic::SearchPolicy::kDepthFirst;
        else fail("policy must be bfs or dfs");
      } else {
        unknown(key);
      }
    } else if (section_ == "random") {
      auto& r = config_.random;
      if (key == "trials") r.trials = number<std::size_t>(v);
      else if (key == "shrink") r.shrink = boolean(v);
      else if (prefixed(key, "range.", rest)) r.ranges[rest] = range(v);
      else unknown(key);
    } else if (section_ == "korat") {
      auto& k = config_.korat;
      if (key == "predicate") k.predicate = v;
      else if (key == "prune") k.prune = boolean(v);
      else if (key == "max_candidates") k.max_candidates = number<std::uint64_t>(v);
      else if (key == "finitization_file") k.finitization += read(path(v));
      else unknown(key);
    } else if (section_ == "grammar") {
      auto& g = config_.grammar;
      if (key == "file") g.file = path(v);
      else if (key == "depth") g.depth = number<std::size_t>(v);
      else if (key == "count") g.count = number<std::size_t>(v);
      else if (key == "cap") g.cap = number<std::size_t>(v);
      else if (key == "generate") {
        if (v == "enumerate") g.sample = false;
        else if (v == "sample") g.sample = true;
        else fail("generate must be enumerate or sample");
      } else {
        unknown(key);
      }
    } else if (section_ == "sequences") {
      auto& q = config_.sequences;
      if (key == "state") q.state = v;
      else if (key == "invariant") q.invariant = v;
      else if (key == "init") q.init = v;
      else if (key == "operations") q.operations = split_list(v);
      else if (key == "max_len") q.max_len = number<std::size_t>(v);
      else if (key == "arg_budget") q.arg_budget = number<std::size_t>(v);
      else if (prefixed(key, "range.", rest)) q.ranges[rest] = ranges(v);
      else unknown(key);
    } else if (section_ == "compare") {
      if (key == "strategies") config_.strategies = split_list(v);
      else unknown(key);
    }
  }

  [[noreturn]] void unknown(const std::string& key) const {
    fail("unknown key '" + key + "'" + (section_.empty() ? "" : " in [" + section_ + "]"));
  }

  std::string read(const std::string& p) const {
    std::ifstream in(p, std::ios::binary);
    if (!in) fail("cannot read '" + p + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  std::string_view text_;
  std::string base_;
  RunConfig config_;
  std::string section_;
  std::set<std::string> seen_;
  int line_ = 0;
};

}  // namespace

std::string_view to_string(Mode m) { return kModes[static_cast<int>(m)]; }
std::string_view to_string(Format f) { return kFormats[static_cast<int>(f)]; }

std::optional<Mode> parse_mode(std::string_view text) {
  for (int i = 0; i < static_cast<int>(std::size(kModes)); ++i) {
    if (kModes[i] == text) return static_cast<Mode>(i);
  }
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view text) {
  for (int i = 0; i < static_cast<int>(std::size(kFormats)); ++i) {
    if (kFormats[i] == text) return static_cast<Format>(i);
  }
  return std::nullopt;
}

std::string_view extension(Format f) {
  switch (f) {
    case Format::kText: return "txt";
    case Format::kCsv: return "csv";
    case Format::kJson: return "json";
  }
  return "txt";
}

RunConfig parse_config(std::string_view text, const std::string& base_dir) {
  return Parser(text, base_dir).parse();
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), std::filesystem::path(path).parent_path().string());
}

void validate(const RunConfig& c) {
  const auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(std::string(to_string(c.mode)) + " mode needs " + what);
  };
  need(c.mode == Mode::kGrammar || !c.sources.empty(), "at least one source file");
  need(!c.formats.empty(), "an output format");
  const bool korat_ready = !c.korat.predicate.empty() && !c.korat.finitization.empty();
  const bool seq_ready = !c.sequences.state.empty() && !c.sequences.operations.empty();
  switch (c.mode) {
    case Mode::kExplore:
    case Mode::kRandom:
      need(!c.function.empty(), "a function name");
      break;
    case Mode::kKorat:
      need(!c.korat.predicate.empty(), "a predicate name");
      need(!c.korat.finitization.empty(), "a finitization");
      break;
    case Mode::kGrammar:
      need(!c.grammar.file.empty(), "a grammar file");
      break;
    case Mode::kSequences:
      need(!c.sequences.state.empty(), "a state record");
      need(!c.sequences.invariant.empty(), "an invariant");
      need(!c.sequences.operations.empty(), "operations");
      break;
    case Mode::kAll:
      need(!c.function.empty() || korat_ready || seq_ready || !c.grammar.file.empty(),
           "a function, predicate, api or grammar");
      break;
    case Mode::kCompare: {
      need(!c.function.empty(), "a function name");
      need(c.strategies.size() >= 2, "at least 2 strategies");
      std::set<std::string> distinct;
      for (const auto& s : c.strategies) {
        if (std::find(std::begin(kStrategies), std::end(kStrategies), s) == std::end(kStrategies)) {
          throw ConfigError("unknown strategy '" + s + "'");
        }
        if (!distinct.insert(s).second) throw ConfigError("strategy '" + s + "' listed twice");
        if (s == "korat") need(korat_ready, "a predicate and finitization for the korat strategy");
      }
      break;
    }
  }
}

lang::ExecOptions exec_options(const RunConfig& c) {
  lang::ExecOptions exec;
  exec.step_budget = c.step_budget;
  exec.branch_budget = c.explore.path_budget;
  return exec;
}

void apply_budget(RunConfig& c, std::uint64_t budget) {
  const auto clamp32 = [](std::uint64_t v) {
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(v, UINT32_MAX));
  };
  switch (c.mode) {
    case Mode::kExplore: c.explore.max_queries = clamp32(budget); break;
    case Mode::kRandom: c.random.trials = budget; break;
    case Mode::kKorat: c.korat.max_candidates = budget; break;
    case Mode::kSequences: c.sequences.max_len = budget; break;
    case Mode::kGrammar: c.grammar.depth = budget; break;
    case Mode::kCompare:
      c.explore.max_queries = clamp32(budget);
      c.random.trials = budget;
      break;
    case Mode::kAll:
      c.explore.max_queries = clamp32(budget);
      c.random.trials = budget;
      c.korat.max_candidates = budget;
      break;
  }
}

}  // namespace testforge::harness
