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

#include "testforge/randgen/random.hpp"

#include <algorithm>
#include <map>

namespace testforge::randgen {
namespace {

using lang::Value;

using Intervals = std::map<std::string, std::pair<std::int32_t, std::int32_t>, std::less<>>;

const lang::FunctionDef& function_or_throw(const lang::Program& program, std::string_view fn) {
  const lang::FunctionDef* def = program.find_function(fn);
  if (!def) throw std::invalid_argument("unknown function '" + std::string(fn) + "'");
  return *def;
}

[[noreturn]] void mismatch(const std::string& where, const std::string& why) {
  throw std::invalid_argument("domain for " + where + ": " + why);
}

void validate(const lang::Program& program, const Domain& d, const lang::Type& t, const std::string& where,
              Intervals& ints) {
  switch (d.kind) {
    case DomainKind::kInt:
      if (t.kind != lang::TypeKind::kInt) mismatch(where, "int domain for a non-int");
      if (d.lo > d.hi) mismatch(where, "empty interval");
      ints[where] = {d.lo, d.hi};
      return;
    case DomainKind::kBool:
      if (t.kind != lang::TypeKind::kBool) mismatch(where, "bool domain for a non-bool");
      return;
    case DomainKind::kRecord: {
      if (t.kind != lang::TypeKind::kRecord || d.record != t.record) mismatch(where, "expected record " + t.record);
      const lang::RecordDecl* rd = program.find_record(d.record);
      for (const auto& f : d.fields) {
        int i = rd->field_index(f.name);
        if (i < 0) mismatch(where, "no field '" + f.name + "'");
        validate(program, f.domain, rd->fields[static_cast<std::size_t>(i)].type, where + "." + f.name, ints);
      }
      return;
    }
    case DomainKind::kStructures:
      if (t.kind != lang::TypeKind::kRecord) mismatch(where, "structures for a non-record");
      if (d.structures.empty()) mismatch(where, "no structures");
      for (const auto& s : d.structures)
        if (!s.heap.contains(s.root) || s.heap.at(s.root).record != t.record)
          mismatch(where, "structure root is not a " + t.record);
      return;
  }
}

class Sampler {
 public:
  Sampler(const lang::Program& program, std::string_view fn, const Domains& domains)
      : program_(program), fn_(fn), def_(function_or_throw(program, fn)), domains_(domains) {
    if (domains.size() != def_.params.size())
      throw std::invalid_argument("expected " + std::to_string(def_.params.size()) + " domains, got " +
                                  std::to_string(domains.size()));
    for (std::size_t i = 0; i < domains.size(); ++i)
      validate(program, domains[i], def_.params[i].type, def_.params[i].name, intervals_);
  }

  // boundary < kBoundarySamples selects boundary values instead of uniform
  // draws.
  lang::CallInput draw(std::mt19937_64& rng, std::optional<std::size_t> boundary) const {
    lang::CallInput in;
    for (const auto& d : domains_) in.args.push_back(value(d, in.heap, rng, boundary));
    return in;
  }

  bool admissible(const lang::CallInput& in) const {
    if (!def_.requires_clause) return true;
    auto r = lang::eval_contract(program_, fn_, lang::ContractKind::kRequires, in.args, in.heap);
    return r.holds.value_or(false);
  }

  bool has_requires() const { return def_.requires_clause != nullptr; }
  const Intervals& intervals() const { return intervals_; }
  const lang::FunctionDef& def() const { return def_; }

 private:
  Value value(const Domain& d, lang::Heap& heap, std::mt19937_64& rng, std::optional<std::size_t> b) const {
    switch (d.kind) {
      case DomainKind::kInt: {
        if (!b) return Value::Int(uniform_int(rng, d.lo, d.hi));
        auto bv = boundary_values(d.lo, d.hi);
        return Value::Int(bv[*b % bv.size()]);
      }
      case DomainKind::kBool: return Value::Bool(b ? *b % 2 == 1 : (rng() >> 63) != 0);
      case DomainKind::kRecord: {
        lang::ObjectId id = lang::allocate_default(program_, heap, d.record);
        const lang::RecordDecl* rd = program_.find_record(d.record);
        for (const auto& f : d.fields) {
          Value v = value(f.domain, heap, rng, b);
          heap.at(id).fields[static_cast<std::size_t>(rd->field_index(f.name))] = v;
        }
        return Value::Handle(id);
      }
      case DomainKind::kStructures: {
        std::size_t n = d.structures.size();
        std::size_t pick = b ? *b % n : static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int32_t>(n - 1)));
        return heapgen::copy_into(d.structures[pick], heap);
      }
    }
    return Value::Null();
  }

  const lang::Program& program_;
  std::string fn_;
  const lang::FunctionDef& def_;
  const Domains& domains_;
  Intervals intervals_;
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Domain Domain::Int(std::int32_t lo, std::int32_t hi) {
  Domain d;
  d.lo = lo;
  d.hi = hi;
  return d;
}

Domain Domain::Bool() {
  Domain d;
  d.kind = DomainKind::kBool;
  return d;
}

Domain Domain::Record(std::string record, std::vector<FieldSpec> fields) {
  Domain d;
  d.kind = DomainKind::kRecord;
  d.record = std::move(record);
  d.fields = std::move(fields);
  return d;
}

Domain Domain::Structures(std::vector<heapgen::Structure> structures) {
  Domain d;
  d.kind = DomainKind::kStructures;
  d.structures = std::move(structures);
  return d;
}

Domains default_domains(const lang::Program& program, std::string_view fn) {
  Domains out;
  for (const auto& p : function_or_throw(program, fn).params) {
    if (p.type.kind == lang::TypeKind::kBool) {
      out.push_back(Domain::Bool());
    } else if (p.type.kind == lang::TypeKind::kRecord) {
      std::vector<FieldSpec> fields;
      for (const auto& f : program.find_record(p.type.record)->fields) {
        if (f.type.kind == lang::TypeKind::kInt) fields.push_back({f.name, Domain::Int(INT32_MIN, INT32_MAX)});
        if (f.type.kind == lang::TypeKind::kBool) fields.push_back({f.name, Domain::Bool()});
      }
      out.push_back(Domain::Record(p.type.record, std::move(fields)));
    } else {
      out.push_back(Domain::Int(INT32_MIN, INT32_MAX));
    }
  }
  return out;
}

std::int32_t uniform_int(std::mt19937_64& rng, std::int32_t lo, std::int32_t hi) {
  std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;  // <= 2^32
  std::uint64_t offset = ((rng() >> 32) * span) >> 32;
  return static_cast<std::int32_t>(lo + static_cast<std::int64_t>(offset));
}

std::vector<std::int32_t> boundary_values(std::int32_t lo, std::int32_t hi) {
  std::vector<std::int32_t> out;
  for (std::int32_t v : {lo, -1, 0, 1, hi})
    if (v >= lo && v <= hi && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

RandomBatch gen_random(const lang::Program& program, std::string_view fn, const Domains& domains,
                       std::uint64_t seed, std::size_t count) {
  Sampler sampler(program, fn, domains);
  if (sampler.has_requires()) {
    std::mt19937_64 probe(mix(seed));
    std::size_t ok = 0;
    for (std::size_t i = 0; i < kRequiresProbe; ++i) ok += sampler.admissible(sampler.draw(probe, std::nullopt));
    if (ok * 100 < kRequiresProbe)
      throw DomainTooStrict("requires of '" + std::string(fn) + "' rejected " +
                            std::to_string(kRequiresProbe - ok) + " of " + std::to_string(kRequiresProbe) +
                            " probe samples");
  }
  RandomBatch batch;
  std::mt19937_64 rng(seed);
  const std::uint64_t max_attempts = kRequiresProbe + 1000 * static_cast<std::uint64_t>(count);
  for (std::uint64_t attempt = 0; batch.inputs.size() < count; ++attempt) {
    if (attempt >= max_attempts) throw DomainTooStrict("requires of '" + std::string(fn) + "' rejected too many samples");
    bool boundary = attempt < kBoundarySamples;
    auto in = sampler.draw(rng, boundary ? std::optional<std::size_t>(attempt) : std::nullopt);
    if (!sampler.admissible(in)) {
      ++batch.rejected;
      continue;
    }
    batch.inputs.push_back(std::move(in));
    batch.boundary.push_back(boundary);
  }
  return batch;
}

std::vector<std::int32_t> shrink_candidates(std::int32_t v, std::int32_t target) {
  if (v == target) return {};
  std::int64_t mid = target + (static_cast<std::int64_t>(v) - target) / 2;
  if (mid == target) return {target};
  return {target, static_cast<std::int32_t>(mid)};
}

PropertyReport check_property(const lang::Program& program, std::string_view fn, const Domains& domains,
                              std::uint64_t seed, std::size_t trials, const PropertyOptions& options) {
  Sampler sampler(program, fn, domains);
  if (!sampler.def().ensures_clause)
    throw std::invalid_argument("function '" + std::string(fn) + "' has no ensures clause");
  PropertyReport report;
  report.seed = seed;
  report.trials = trials;
  auto batch = gen_random(program, fn, domains, seed, trials);
  report.rejected = batch.rejected;

  auto verdict_of = [&](const lang::CallInput& in, lang::Outcome* outcome) {
    auto r = lang::eval_call(program, fn, in.args, in.heap, options.exec);
    if (outcome) *outcome = r.outcome;
    return concolic::classify(program, fn, in, r, options.exec);
  };

  for (std::size_t i = 0; i < batch.inputs.size(); ++i) {
    Failure f{i, batch.inputs[i], {}, {}};
    f.verdict = verdict_of(f.input, &f.outcome);
    if (f.verdict == concolic::Verdict::kPass) continue;
    ++report.failure_count;
    if (report.failures.size() < options.max_kept_failures) report.failures.push_back(std::move(f));
  }
  if (report.failures.empty()) return report;

  Failure best = report.failures.front();
  if (options.shrink) {
    auto slots = lang::scalar_slots(program, sampler.def(), best.input);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& slot : slots) {
        auto range = sampler.intervals().find(slot.name);
        if (slot.is_bool || range == sampler.intervals().end()) continue;
        auto [lo, hi] = range->second;
        std::int32_t v = lang::read_slot(best.input, slot).as_int();
        for (std::int32_t c : shrink_candidates(v, std::clamp<std::int32_t>(0, lo, hi))) {
          lang::CallInput cand = best.input;
          lang::write_slot(cand, slot, c);
          if (!sampler.admissible(cand)) continue;
          lang::Outcome out;
          if (verdict_of(cand, &out) != best.verdict) continue;
          best.input = std::move(cand);
          best.outcome = out;
          ++report.shrink_steps;
          changed = true;
          break;
        }
      }
    }
  }
  report.counterexample = std::move(best);
  return report;
}

}  // namespace testforge::randgen
