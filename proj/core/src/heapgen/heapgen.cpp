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

#include "testforge/heapgen/heapgen.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "testforge/lang/interpreter.hpp"

namespace testforge::heapgen {
namespace {

using lang::ObjectId;
using lang::Value;

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw FinitizationError("finitization line " + std::to_string(line) + ": " + msg);
}

std::int32_t parse_int(std::size_t line, const std::string& tok) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size() || v < std::numeric_limits<std::int32_t>::min() ||
        v > std::numeric_limits<std::int32_t>::max())
      throw std::out_of_range(tok);
    return static_cast<std::int32_t>(v);
  } catch (const std::logic_error&) {
    fail(line, "expected a 32-bit integer, got '" + tok + "'");
  }
}

FieldDomain default_domain(const lang::Type& t) {
  FieldDomain d;
  if (t.kind == lang::TypeKind::kBool) {
    d.kind = DomainKind::kBool;
    d.hi = 0;
  } else if (t.kind == lang::TypeKind::kRecord) {
    d.kind = DomainKind::kRef;
    d.nullable = true;
  }
  return d;
}

std::size_t domain_size(const FieldDomain& d, const Finitization& fin) {
  switch (d.kind) {
    case DomainKind::kInt: return static_cast<std::size_t>(static_cast<std::int64_t>(d.hi) - d.lo + 1);
    case DomainKind::kBool: return static_cast<std::size_t>(d.hi - d.lo + 1);
    case DomainKind::kRef: {
      const Pool* p = d.pool.empty() ? nullptr : fin.find_pool(d.pool);
      return (d.nullable ? 1 : 0) + (p ? p->count : 0);
    }
  }
  return 0;
}

class AccessLogger : public lang::ExecutionObserver {
 public:
  explicit AccessLogger(const CandidateSpace& space) : space_(space), seen_(space.size(), false) {}

  void on_field_read(ObjectId id, int field) override {
    auto pos = space_.position(id, field);
    if (!pos || seen_[*pos]) return;
    seen_[*pos] = true;
    log.push_back(*pos);
  }

  AccessLog log;

 private:
  const CandidateSpace& space_;
  std::vector<bool> seen_;
};

// Breadth-first first-visit numbering of the objects reachable from root.
std::vector<ObjectId> reachable(const Structure& s) {
  std::vector<ObjectId> order;
  std::map<ObjectId, std::size_t> index;
  if (!s.heap.contains(s.root)) return order;
  order.push_back(s.root);
  index[s.root] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const Value& v : s.heap.at(order[i]).fields)
      if (v.is_handle() && !index.count(v.handle())) {
        index[v.handle()] = order.size();
        order.push_back(v.handle());
      }
  return order;
}

std::string scalar_text(const Value& v) {
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  return std::to_string(v.as_int());
}

}  // namespace

// --- finitization ----------------------------------------------------------

const Pool* Finitization::find_pool(std::string_view name) const {
  for (const auto& p : pools)
    if (p.name == name) return &p;
  return nullptr;
}

const Binding* Finitization::find_binding(std::string_view record, std::string_view field) const {
  for (const auto& b : bindings)
    if (b.record == record && b.field == field) return &b;
  return nullptr;
}

Finitization finitize(const lang::Program& program, std::string_view text) {
  Finitization fin;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "root") {
      if (tok.size() != 2) fail(line, "expected 'root <Record>'");
      if (!program.find_record(tok[1])) fail(line, "unknown record '" + tok[1] + "'");
      if (!fin.root.empty()) fail(line, "root given twice");
      fin.root = tok[1];
    } else if (tok[0] == "objset") {
      if (tok.size() != 5 || tok[2] != "=") fail(line, "expected 'objset <name> = <Record> <count>'");
      if (fin.find_pool(tok[1])) fail(line, "duplicate objset '" + tok[1] + "'");
      if (!program.find_record(tok[3])) fail(line, "unknown record '" + tok[3] + "'");
      for (const auto& p : fin.pools)
        if (p.record == tok[3]) fail(line, "record '" + tok[3] + "' already has objset '" + p.name + "'");
      std::int32_t n = parse_int(line, tok[4]);
      if (n < 0) fail(line, "negative objset size");
      fin.pools.push_back({tok[1], tok[3], static_cast<std::size_t>(n)});
    } else if (tok[0] == "set") {
      if (tok.size() < 4 || tok[2] != "=") fail(line, "expected 'set <Record>.<field> = <domain>'");
      auto dot = tok[1].find('.');
      if (dot == std::string::npos) fail(line, "expected <Record>.<field>");
      std::string rec = tok[1].substr(0, dot), field = tok[1].substr(dot + 1);
      const lang::RecordDecl* rd = program.find_record(rec);
      if (!rd) fail(line, "unknown record '" + rec + "'");
      int fi = rd->field_index(field);
      if (fi < 0) fail(line, "record '" + rec + "' has no field '" + field + "'");
      if (fin.find_binding(rec, field)) fail(line, "field " + tok[1] + " bound twice");
      const lang::Type& ft = rd->fields[static_cast<std::size_t>(fi)].type;
      FieldDomain d = default_domain(ft);
      std::vector<std::string> spec(tok.begin() + 3, tok.end());
      if (ft.kind == lang::TypeKind::kInt) {
        if (spec.size() != 3 || spec[0] != "int") fail(line, "expected 'int <lo> <hi>' for " + tok[1]);
        d.lo = parse_int(line, spec[1]);
        d.hi = parse_int(line, spec[2]);
        if (d.lo > d.hi) fail(line, "empty interval for " + tok[1]);
      } else if (ft.kind == lang::TypeKind::kBool) {
        if (spec.size() != 1) fail(line, "expected 'bool', 'true' or 'false' for " + tok[1]);
        if (spec[0] == "bool") d.hi = 1;
        else if (spec[0] == "true") d.lo = d.hi = 1;
        else if (spec[0] != "false") fail(line, "expected 'bool', 'true' or 'false' for " + tok[1]);
      } else {
        d.nullable = false;
        for (const auto& s : spec) {
          if (s == "null") {
            d.nullable = true;
            continue;
          }
          const Pool* p = fin.find_pool(s);
          if (!p) fail(line, "unknown objset '" + s + "'");
          if (p->record != ft.record) fail(line, "objset '" + s + "' holds " + p->record + ", not " + ft.record);
          if (!d.pool.empty()) fail(line, "more than one objset for " + tok[1]);
          d.pool = s;
        }
      }
      fin.bindings.push_back({rec, field, d});
    } else {
      fail(line, "unknown directive '" + tok[0] + "'");
    }
  }
  if (fin.root.empty()) throw FinitizationError("finitization has no root");
  for (const auto& f : program.find_record(fin.root)->fields)
    if (!fin.find_binding(fin.root, f.name)) throw FinitizationError("root field " + fin.root + "." + f.name + " is unbound");
  for (const auto& b : fin.bindings)
    if (domain_size(b.domain, fin) == 0) throw FinitizationError("empty domain for " + b.record + "." + b.field);
  return fin;
}

std::string to_text(const Finitization& fin) {
  std::ostringstream out;
  out << "root " << fin.root << "\n";
  for (const auto& p : fin.pools) out << "objset " << p.name << " = " << p.record << " " << p.count << "\n";
  for (const auto& b : fin.bindings) {
    out << "set " << b.record << "." << b.field << " =";
    const FieldDomain& d = b.domain;
    switch (d.kind) {
      case DomainKind::kInt: out << " int " << d.lo << " " << d.hi; break;
      case DomainKind::kBool: out << (d.lo != d.hi ? " bool" : d.lo ? " true" : " false"); break;
      case DomainKind::kRef:
        if (!d.pool.empty()) out << " " << d.pool;
        if (d.nullable) out << " null";
        break;
    }
    out << "\n";
  }
  return out.str();
}

// --- candidate space -------------------------------------------------------

CandidateSpace::CandidateSpace(const lang::Program& program, Finitization fin) : fin_(std::move(fin)) {
  const lang::RecordDecl* root = program.find_record(fin_.root);
  if (!root) throw FinitizationError("unknown root record '" + fin_.root + "'");
  object_records_.push_back(fin_.root);
  pool_first_.assign(fin_.pools.size(), 0);
  for (const auto& rd : program.records)
    for (std::size_t p = 0; p < fin_.pools.size(); ++p)
      if (fin_.pools[p].record == rd.name) {
        pool_first_[p] = static_cast<ObjectId>(object_records_.size() + 1);
        object_records_.insert(object_records_.end(), fin_.pools[p].count, rd.name);
      }
  for (std::size_t i = 0; i < object_records_.size(); ++i) {
    object_base_.push_back(slots_.size());
    const lang::RecordDecl* rd = program.find_record(object_records_[i]);
    for (std::size_t f = 0; f < rd->fields.size(); ++f) {
      const Binding* b = fin_.find_binding(rd->name, rd->fields[f].name);
      FieldDomain d = b ? b->domain : default_domain(rd->fields[f].type);
      if (heapgen::domain_size(d, fin_) == 0)
        throw FinitizationError("empty domain for " + rd->name + "." + rd->fields[f].name);
      slots_.push_back({static_cast<ObjectId>(i + 1), static_cast<int>(f), std::move(d)});
    }
  }
}

std::size_t CandidateSpace::domain_size(std::size_t pos) const { return heapgen::domain_size(slots_[pos].domain, fin_); }

std::optional<std::size_t> CandidateSpace::position(ObjectId object, int field) const {
  if (object == 0 || object > object_base_.size()) return std::nullopt;
  std::size_t pos = object_base_[object - 1] + static_cast<std::size_t>(field);
  if (pos >= slots_.size() || slots_[pos].object != object) return std::nullopt;
  return pos;
}

std::int64_t CandidateSpace::pool_index(std::size_t pos, std::uint32_t index) const {
  const FieldDomain& d = slots_[pos].domain;
  if (d.kind != DomainKind::kRef) return -1;
  return d.nullable ? static_cast<std::int64_t>(index) - 1 : static_cast<std::int64_t>(index);
}

Value CandidateSpace::value(std::size_t pos, std::uint32_t index) const {
  const FieldDomain& d = slots_[pos].domain;
  switch (d.kind) {
    case DomainKind::kInt: return Value::Int(static_cast<std::int32_t>(d.lo + static_cast<std::int64_t>(index)));
    case DomainKind::kBool: return Value::Bool(d.lo + static_cast<std::int32_t>(index) != 0);
    case DomainKind::kRef: {
      std::int64_t k = pool_index(pos, index);
      if (k < 0) return Value::Null();
      for (std::size_t p = 0; p < fin_.pools.size(); ++p)
        if (fin_.pools[p].name == d.pool) return Value::Handle(pool_first_[p] + static_cast<ObjectId>(k));
      return Value::Null();
    }
  }
  return Value::Null();
}

std::uint64_t CandidateSpace::total() const {
  std::uint64_t t = 1;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    std::uint64_t n = domain_size(i);
    if (t > std::numeric_limits<std::uint64_t>::max() / n) return std::numeric_limits<std::uint64_t>::max();
    t *= n;
  }
  return t;
}

lang::Heap CandidateSpace::decode(const CandidateVector& cv) const {
  lang::Heap heap;
  for (std::size_t i = 0; i < object_records_.size(); ++i) {
    lang::HeapObject obj{object_records_[i], {}};
    std::size_t end = i + 1 < object_base_.size() ? object_base_[i + 1] : slots_.size();
    for (std::size_t pos = object_base_[i]; pos < end; ++pos) obj.fields.push_back(value(pos, cv[pos]));
    heap.insert(static_cast<ObjectId>(i + 1), std::move(obj));
  }
  return heap;
}

// --- search ----------------------------------------------------------------

std::optional<CandidateVector> prune_next(const CandidateSpace& space, CandidateVector cv, const AccessLog& log,
                                          bool break_isomorphism) {
  for (std::size_t i = log.size(); i-- > 0;) {
    std::size_t p = log[i];
    std::size_t limit = space.domain_size(p) - 1;
    const FieldDomain& d = space.domain(p);
    if (break_isomorphism && d.kind == DomainKind::kRef && !d.pool.empty()) {
      std::int64_t largest = -1;
      for (std::size_t j = 0; j < i; ++j) {
        const FieldDomain& e = space.domain(log[j]);
        if (e.kind == DomainKind::kRef && e.pool == d.pool)
          largest = std::max(largest, space.pool_index(log[j], cv[log[j]]));
      }
      limit = std::min(limit, static_cast<std::size_t>((d.nullable ? 1 : 0) + largest + 1));
    }
    if (cv[p] < limit) {
      ++cv[p];
      return cv;
    }
    cv[p] = 0;
  }
  return std::nullopt;
}

std::optional<CandidateVector> lexicographic_next(const CandidateSpace& space, CandidateVector cv) {
  for (std::size_t i = cv.size(); i-- > 0;) {
    if (cv[i] + 1 < space.domain_size(i)) {
      ++cv[i];
      return cv;
    }
    cv[i] = 0;
  }
  return std::nullopt;
}

std::string canonical_form(const Structure& s) {
  std::vector<ObjectId> order = reachable(s);
  std::map<ObjectId, std::size_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
  std::string out;
  for (ObjectId id : order) {
    const lang::HeapObject& obj = s.heap.at(id);
    out += obj.record + "(";
    for (std::size_t f = 0; f < obj.fields.size(); ++f) {
      const Value& v = obj.fields[f];
      if (f) out += ",";
      out += v.is_handle() ? "#" + std::to_string(index.at(v.handle())) : v.is_null() ? "null" : scalar_text(v);
    }
    out += ")";
  }
  return out;
}

lang::Value copy_into(const Structure& s, lang::Heap& heap) {
  std::vector<ObjectId> order = reachable(s);
  std::map<ObjectId, ObjectId> fresh;
  for (ObjectId id : order) fresh[id] = heap.allocate(s.heap.at(id).record, {});
  for (ObjectId id : order) {
    lang::HeapObject& dst = heap.at(fresh[id]);
    dst.fields = s.heap.at(id).fields;
    for (Value& v : dst.fields)
      if (v.is_handle()) v = Value::Handle(fresh.at(v.handle()));
  }
  return order.empty() ? Value::Null() : Value::Handle(fresh.at(s.root));
}

std::string to_dot(const lang::Program& program, const Structure& s) {
  std::vector<ObjectId> order = reachable(s);
  std::map<ObjectId, std::size_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
  std::ostringstream out;
  out << "digraph structure {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const lang::HeapObject& obj = s.heap.at(order[i]);
    const lang::RecordDecl* rd = program.find_record(obj.record);
    out << "  n" << i << " [label=\"" << obj.record;
    for (std::size_t f = 0; f < obj.fields.size(); ++f)
      if (!obj.fields[f].is_reference()) out << "\\n" << rd->fields[f].name << " = " << scalar_text(obj.fields[f]);
    out << "\"];\n";
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const lang::HeapObject& obj = s.heap.at(order[i]);
    const lang::RecordDecl* rd = program.find_record(obj.record);
    for (std::size_t f = 0; f < obj.fields.size(); ++f)
      if (obj.fields[f].is_handle())
        out << "  n" << i << " -> n" << index.at(obj.fields[f].handle()) << " [label=\"" << rd->fields[f].name
            << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_string(const GenerateStats& st) {
  std::ostringstream out;
  out << "explored=" << st.explored << " valid=" << st.valid << " classes=" << st.classes
      << " pruned_skips=" << st.pruned_skips << " errors=" << st.errors << " bound_exceeded=" << st.bound_exceeded;
  if (st.truncated) out << " truncated";
  return out.str();
}

GenerateStats generate(const lang::Program& program, std::string_view predicate, const Finitization& fin,
                       const GenerateOptions& options, const std::function<bool(const Structure&)>& sink) {
  const lang::FunctionDef* fn = program.find_function(predicate);
  if (!fn) throw std::invalid_argument("unknown predicate '" + std::string(predicate) + "'");
  if (fn->params.size() != 1 || fn->params[0].type != lang::Type::Record(fin.root) ||
      fn->return_type != lang::Type::Bool())
    throw std::invalid_argument("predicate '" + std::string(predicate) + "' must map " + fin.root + " to bool");

  CandidateSpace space(program, fin);
  lang::ExecOptions exec;
  exec.step_budget = options.step_budget;
  const Value root_arg[] = {Value::Handle(space.root())};

  GenerateStats st;
  std::vector<std::string> seen;  // sorted canonical forms
  std::optional<CandidateVector> cv = CandidateVector(space.size(), 0);
  while (cv) {
    if (options.max_candidates != 0 && st.explored >= options.max_candidates) {
      st.truncated = true;
      break;
    }
    Structure s{space.decode(*cv), space.root(), *cv};
    AccessLogger logger(space);
    auto r = lang::eval_call(program, predicate, root_arg, s.heap, exec, &logger);
    ++st.explored;
    switch (r.outcome.kind) {
      case lang::OutcomeKind::kReturned:
        if (r.outcome.value == Value::Bool(true)) {
          ++st.valid;
          std::string key = canonical_form(s);
          auto at = std::lower_bound(seen.begin(), seen.end(), key);
          if (at == seen.end() || *at != key) {
            seen.insert(at, std::move(key));
            ++st.classes;
            if (!sink(s)) {
              st.truncated = true;
              cv.reset();
              continue;
            }
          }
        }
        break;
      case lang::OutcomeKind::kStepBoundExceeded: ++st.bound_exceeded; break;
      default: ++st.errors; break;
    }
    cv = options.prune ? prune_next(space, std::move(*cv), logger.log) : lexicographic_next(space, std::move(*cv));
  }
  std::uint64_t total = space.total();
  st.pruned_skips = total > st.explored ? total - st.explored : 0;
  return st;
}

Generation generate(const lang::Program& program, std::string_view predicate, const Finitization& fin,
                    const GenerateOptions& options) {
  Generation g;
  g.stats = generate(program, predicate, fin, options, [&](const Structure& s) {
    g.structures.push_back(s);
    return true;
  });
  return g;
}

}  // namespace testforge::heapgen
