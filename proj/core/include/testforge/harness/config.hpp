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

// Run configuration for the command-line front end. A config file is flat
// `key = value` text with optional sections per mode:
//
//   mode = explore
//   sources = multiply.mini
//   function = Multiply
//   [explore]
//   max_queries = 500
//
// Paths inside a config file are relative to the file itself.

#ifndef TESTFORGE_HARNESS_CONFIG_HPP_
#define TESTFORGE_HARNESS_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/concolic/concolic.hpp"

namespace testforge::harness {

enum class Mode : std::uint8_t { kExplore, kKorat, kRandom, kGrammar, kSequences, kAll, kCompare };
enum class Format : std::uint8_t { kText, kCsv, kJson };

std::string_view to_string(Mode m);
std::string_view to_string(Format f);
std::optional<Mode> parse_mode(std::string_view text);
std::optional<Format> parse_format(std::string_view text);
// File extension of a table in this format: "txt", "csv" or "json".
std::string_view extension(Format f);

inline constexpr std::uint64_t kDefaultSeed = 0x7e57f0e6e;

// An interval for one integer input, keyed by slot name ("x", "p.x").
struct IntRange {
  std::int32_t lo = 0;
  std::int32_t hi = 0;

  bool operator==(const IntRange&) const = default;
};

struct RandomSettings {
  std::size_t trials = 1000;
  bool shrink = true;
  std::map<std::string, IntRange> ranges;

  bool operator==(const RandomSettings&) const = default;
};

struct KoratSettings {
  std::string predicate;
  std::string finitization;  // finitization text, one declaration per line
  bool prune = true;
  std::uint64_t max_candidates = 0;

  bool operator==(const KoratSettings&) const = default;
};

struct GrammarSettings {
  std::string file;
  std::size_t depth = 6;
  bool sample = false;  // enumerate unless set
  std::size_t count = 100;
  std::size_t cap = 1'000'000;

  bool operator==(const GrammarSettings&) const = default;
};

struct SequenceSettings {
  std::string state;
  std::string invariant;
  std::string init;
  std::vector<std::string> operations;
  // Per-operation argument ranges, one per argument after the state.
  std::map<std::string, std::vector<IntRange>> ranges;
  std::size_t max_len = 3;
  std::size_t arg_budget = 3;

  bool operator==(const SequenceSettings&) const = default;
};

struct RunConfig {
  Mode mode = Mode::kExplore;
  std::vector<std::string> sources;
  std::string function;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir = "testforge-out";
  std::vector<Format> formats = {Format::kText};
  std::uint64_t step_budget = lang::kDefaultStepBudget;

  concolic::ExploreLimits explore;
  RandomSettings random;
  KoratSettings korat;
  GrammarSettings grammar;
  SequenceSettings sequences;
  std::vector<std::string> strategies = {"concolic", "random"};

  bool operator==(const RunConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative paths (sources, grammar file) are resolved against base_dir when
// it is non-empty. Throws ConfigError with a "config line N: ..." message.
RunConfig parse_config(std::string_view text, const std::string& base_dir = "");
RunConfig load_config(const std::string& path);

// Checks that the fields the mode needs are present; throws ConfigError.
void validate(const RunConfig& config);

// Interpreter options every strategy runs and replays under: the step
// budget plus the explore path budget as the per-run decision cap.
lang::ExecOptions exec_options(const RunConfig& config);

// Applies a --budget value to the mode's main budget: solver queries for
// explore and compare, trials for random, candidates for korat, sequence
// length for sequences, depth for grammar. `all` sets queries, trials and
// candidates.
void apply_budget(RunConfig& config, std::uint64_t budget);

}  // namespace testforge::harness

#endif  // TESTFORGE_HARNESS_CONFIG_HPP_
