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

// Random inputs drawn from per-parameter domains, and property checking of a
// function's ensures clause over such inputs with shrinking of failures.

#ifndef TESTFORGE_RANDGEN_RANDOM_HPP_
#define TESTFORGE_RANDGEN_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/concolic/test_case.hpp"
#include "testforge/heapgen/heapgen.hpp"
#include "testforge/lang/inputs.hpp"
#include "testforge/lang/interpreter.hpp"

namespace testforge::randgen {

enum class DomainKind : std::uint8_t { kInt, kBool, kRecord, kStructures };

struct FieldSpec;

// Where one parameter's (or field's) values come from. A kRecord domain
// allocates a fresh object whose listed fields are drawn from their own
// domains; unlisted fields keep their defaults. A kStructures domain picks one
// of the given structures uniformly.
struct Domain {
  DomainKind kind = DomainKind::kInt;
  std::int32_t lo = std::numeric_limits<std::int32_t>::min();
  std::int32_t hi = std::numeric_limits<std::int32_t>::max();
  std::string record;
  std::vector<FieldSpec> fields;
  std::vector<heapgen::Structure> structures;

  static Domain Int(std::int32_t lo, std::int32_t hi);
  static Domain Bool();
  static Domain Record(std::string record, std::vector<FieldSpec> fields);
  static Domain Structures(std::vector<heapgen::Structure> structures);
};

struct FieldSpec {
  std::string name;
  Domain domain;
};

using Domains = std::vector<Domain>;  // one per parameter

// Full-range domains: ints over int32, records with every scalar field drawn
// and reference fields left null.
Domains default_domains(const lang::Program& program, std::string_view fn);

class DomainTooStrict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Uniform integer in [lo, hi] from a 64-bit draw; the mapping is fixed so
// that seeds reproduce across platforms.
std::int32_t uniform_int(std::mt19937_64& rng, std::int32_t lo, std::int32_t hi);
// The distinct values among lo, -1, 0, 1, hi that lie in [lo, hi], in that
// order.
std::vector<std::int32_t> boundary_values(std::int32_t lo, std::int32_t hi);

inline constexpr std::size_t kBoundarySamples = 5;
inline constexpr std::size_t kRequiresProbe = 10'000;

struct RandomBatch {
  std::vector<lang::CallInput> inputs;
  std::vector<bool> boundary;  // input came from the boundary prefix
  std::uint64_t rejected = 0;  // samples discarded by `requires`
};

// Draws `count` inputs satisfying fn's requires clause. The first
// kBoundarySamples draws combine boundary values instead of uniform ones.
// Throws std::invalid_argument when domains do not fit the signature, and
// DomainTooStrict when more than 99% of kRequiresProbe samples violate
// `requires`.
RandomBatch gen_random(const lang::Program& program, std::string_view fn, const Domains& domains,
                       std::uint64_t seed, std::size_t count);

struct Failure {
  std::size_t trial = 0;
  lang::CallInput input;
  lang::Outcome outcome;
  concolic::Verdict verdict = concolic::Verdict::kPass;

  bool operator==(const Failure&) const = default;
};

struct PropertyOptions {
  lang::ExecOptions exec;
  bool shrink = true;
  std::size_t max_kept_failures = 100;
};

struct PropertyReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::uint64_t rejected = 0;
  std::size_t failure_count = 0;
  std::vector<Failure> failures;  // the first max_kept_failures
  std::optional<Failure> counterexample;  // first failure after shrinking
  std::size_t shrink_steps = 0;

  bool operator==(const PropertyReport&) const = default;
};

// Runs `trials` random calls and classifies each; anything but Pass is a
// failure. Integer inputs of the first failure are shrunk toward 0 (clamped
// into their domain) by bisection while the verdict stays the same. Throws
// std::invalid_argument when fn has no ensures clause.
PropertyReport check_property(const lang::Program& program, std::string_view fn, const Domains& domains,
                              std::uint64_t seed, std::size_t trials, const PropertyOptions& options = {});

// Candidate values one shrink step away from v toward target: the target
// itself, then the midpoint.
std::vector<std::int32_t> shrink_candidates(std::int32_t v, std::int32_t target);

}  // namespace testforge::randgen

#endif  // TESTFORGE_RANDGEN_RANDOM_HPP_
