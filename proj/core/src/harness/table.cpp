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

#include "testforge/harness/table.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "testforge/lang/inputs.hpp"
#include "testforge/lang/interpreter.hpp"

namespace testforge::harness {
namespace {

using concolic::TestCase;
using concolic::Verdict;
using Json = nlohmann::json;

std::string where(const lang::Program& program, lang::NodeId id) {
  if (id < 0 || static_cast<std::size_t>(id) >= program.nodes.size()) return "?";
  const auto& loc = program.nodes[static_cast<std::size_t>(id)].loc;
  return std::to_string(loc.line) + ":" + std::to_string(loc.col);
}

lang::NodeId failed_check(const lang::ExecutionResult& r) {
  if (r.outcome.kind == lang::OutcomeKind::kCheckViolated) return r.outcome.location;
  for (const auto& e : r.trace.events) {
    if (e.kind == lang::EventKind::kCheck && !e.value) return e.location;
  }
  return lang::kNoNode;
}

std::string output_of(const lang::Program& program, const lang::ExecutionResult& r) {
  switch (r.outcome.kind) {
    case lang::OutcomeKind::kReturned:
      return r.outcome.value.is_void() ? "-" : lang::render_value(program, r.heap, r.outcome.value);
    case lang::OutcomeKind::kRuntimeError: return lang::to_string(r.outcome.error);
    case lang::OutcomeKind::kCheckViolated: return "check-violated";
    case lang::OutcomeKind::kStepBoundExceeded: return "-";
  }
  return "-";
}

std::string message_of(const lang::Program& program, Verdict v, const lang::ExecutionResult& r) {
  switch (v) {
    case Verdict::kPass: return "";
    case Verdict::kContractViolation: return "ensures does not hold";
    case Verdict::kCheckViolation: return "check failed at " + where(program, failed_check(r));
    case Verdict::kRuntimeError:
      return lang::to_string(r.outcome.error) + " at " + where(program, r.outcome.location);
    case Verdict::kBoundExceeded:
      return lang::to_string(r.outcome.bound) + " bound exceeded at " + where(program, r.outcome.location);
  }
  return "";
}

// Values -------------------------------------------------------------------

Json value_json(lang::Value v) {
  switch (v.kind()) {
    case lang::ValueKind::kInt: return Json{{"int", v.as_int()}};
    case lang::ValueKind::kBool: return Json{{"bool", v.as_bool()}};
    case lang::ValueKind::kHandle: return Json{{"handle", v.handle()}};
    case lang::ValueKind::kNull: return Json{{"null", true}};
    case lang::ValueKind::kVoid: return Json{{"void", true}};
  }
  return Json();
}

lang::Value value_from(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw std::invalid_argument("bad value " + j.dump());
  if (j.contains("int")) return lang::Value::Int(j.at("int").get<std::int32_t>());
  if (j.contains("bool")) return lang::Value::Bool(j.at("bool").get<bool>());
  if (j.contains("handle")) return lang::Value::Handle(j.at("handle").get<lang::ObjectId>());
  if (j.contains("null")) return lang::Value::Null();
  if (j.contains("void")) return lang::Value::Void();
  throw std::invalid_argument("bad value " + j.dump());
}

template <typename E, typename F>
E enum_from(const std::string& text, int count, F name) {
  for (int i = 0; i < count; ++i) {
    if (name(static_cast<E>(i)) == text) return static_cast<E>(i);
  }
  throw std::invalid_argument("unknown name '" + text + "'");
}

Json case_json(const TableRow& row) {
  const TestCase& tc = row.test;
  Json args = Json::array();
  for (const auto& a : tc.input.args) args.push_back(value_json(a));
  Json heap = Json::array();
  for (const auto& [id, obj] : tc.input.heap.objects()) {
    Json fields = Json::array();
    for (const auto& f : obj.fields) fields.push_back(value_json(f));
    heap.push_back(Json{{"id", id}, {"record", obj.record}, {"fields", fields}});
  }
  Json sig = Json::array();
  for (const auto& e : tc.signature) {
    sig.push_back(Json{{"kind", e.kind == lang::EventKind::kBranch ? "branch" : "check"},
                       {"location", e.location},
                       {"value", e.value}});
  }
  const auto& o = tc.outcome;
  return Json{{"mark", row.mark},
              {"verdict", std::string(concolic::to_string(tc.verdict))},
              {"inputs", row.inputs},
              {"output", row.output},
              {"message", row.message},
              {"provenance", tc.provenance},
              {"args", args},
              {"heap", heap},
              {"outcome",
               Json{{"kind", lang::to_string(o.kind)},
                    {"value", value_json(o.value)},
                    {"location", o.location},
                    {"error", lang::to_string(o.error)},
                    {"bound", lang::to_string(o.bound)}}},
              {"signature", sig}};
}

TestCase case_from(const std::string& fn, const Json& j) {
  TestCase tc;
  tc.function = fn;
  const auto verdict = concolic::parse_verdict(j.at("verdict").get<std::string>());
  if (!verdict) throw std::invalid_argument("unknown verdict");
  tc.verdict = *verdict;
  tc.provenance = j.at("provenance").get<std::string>();
  for (const auto& a : j.at("args")) tc.input.args.push_back(value_from(a));
  for (const auto& obj : j.at("heap")) {
    lang::HeapObject h;
    h.record = obj.at("record").get<std::string>();
    for (const auto& f : obj.at("fields")) h.fields.push_back(value_from(f));
    tc.input.heap.insert(obj.at("id").get<lang::ObjectId>(), std::move(h));
  }
  const Json& o = j.at("outcome");
  tc.outcome.kind = enum_from<lang::OutcomeKind>(o.at("kind").get<std::string>(), 4,
                                                  [](auto k) { return lang::to_string(k); });
  tc.outcome.value = value_from(o.at("value"));
  tc.outcome.location = o.at("location").get<lang::NodeId>();
  tc.outcome.error = enum_from<lang::RuntimeErrorKind>(o.at("error").get<std::string>(), 3,
                                                        [](auto k) { return lang::to_string(k); });
  tc.outcome.bound =
      enum_from<lang::BoundKind>(o.at("bound").get<std::string>(), 4, [](auto k) { return lang::to_string(k); });
  for (const auto& e : j.at("signature")) {
    const std::string kind = e.at("kind").get<std::string>();
    if (kind != "branch" && kind != "check") throw std::invalid_argument("bad event kind '" + kind + "'");
    tc.signature.push_back(lang::TraceEvent{kind == "branch" ? lang::EventKind::kBranch : lang::EventKind::kCheck,
                                            e.at("location").get<lang::NodeId>(), e.at("value").get<bool>()});
  }
  return tc;
}

std::vector<std::string> cells(const TableRow& row) {
  std::vector<std::string> out{row.mark};
  out.insert(out.end(), row.inputs.begin(), row.inputs.end());
  out.push_back(row.output);
  out.push_back(row.message);
  return out;
}

std::string render_text(const TestTable& t) {
  std::vector<std::vector<std::string>> lines{t.columns};
  for (const auto& r : t.rows) lines.push_back(cells(r));
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (const auto& l : lines) {
    for (std::size_t i = 0; i < l.size(); ++i) width[i] = std::max(width[i], l[i].size());
  }
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.emplace_back(w, '-');
  lines.insert(lines.begin() + 1, rule);
  std::ostringstream os;
  for (const auto& l : lines) {
    std::string text;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i > 0) text += "  ";
      text += l[i];
      if (i + 1 < l.size()) text.append(width[i] - l[i].size(), ' ');
    }
    text.erase(text.find_last_not_of(' ') + 1);
    os << text << '\n';
  }
  return os.str();
}

std::string render_csv(const TestTable& t) {
  std::ostringstream os;
  const auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
    os << '\n';
  };
  auto header = t.columns;
  header.insert(header.end(), {"verdict", "provenance"});
  line(header);
  for (const auto& r : t.rows) {
    auto c = cells(r);
    c.push_back(std::string(concolic::to_string(r.test.verdict)));
    c.push_back(r.test.provenance);
    line(c);
  }
  return os.str();
}

std::string render_json(const TestTable& t) {
  Json cases = Json::array();
  for (const auto& r : t.rows) cases.push_back(case_json(r));
  Json doc{{"function", t.function}, {"columns", t.columns}, {"cases", cases}};
  return doc.dump(2) + "\n";
}

}  // namespace

std::string_view mark(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "OK";
    case Verdict::kBoundExceeded: return "BOUND";
    default: return "FAIL";
  }
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

TestTable make_table(const lang::Program& program, std::string_view fn, std::span<const TestCase> cases,
                     const lang::ExecOptions& exec) {
  const lang::FunctionDef* def = program.find_function(fn);
  if (def == nullptr) throw std::invalid_argument("unknown function '" + std::string(fn) + "'");
  TestTable t;
  t.function = std::string(fn);
  t.columns.push_back("Result");
  for (const auto& p : def->params) t.columns.push_back(p.name);
  t.columns.push_back("return value");
  t.columns.push_back("message");

  for (std::size_t i = 0; i < cases.size(); ++i) {
    const TestCase& tc = cases[i];
    if (tc.function != fn) {
      throw std::invalid_argument("case " + std::to_string(i) + " is for '" + tc.function + "', not '" +
                                  std::string(fn) + "'");
    }
    // Independent replay: the stored verdict is only trusted if a fresh run agrees.
    const auto result = lang::eval_call(program, fn, tc.input.args, tc.input.heap, exec);
    const Verdict v = concolic::classify(program, fn, tc.input, result, exec);
    if (v != tc.verdict || result.outcome != tc.outcome || result.trace.events != tc.signature) {
      std::string what = v != tc.verdict ? "verdict " + std::string(concolic::to_string(tc.verdict)) +
                                               " but replay gives " + std::string(concolic::to_string(v))
                         : result.outcome != tc.outcome ? "outcome differs from replay"
                                                        : "path differs from replay";
      throw ReplayMismatch("case " + std::to_string(i) + " of " + std::string(fn) + ": " + what);
    }
    TableRow row;
    row.mark = std::string(mark(v));
    for (const auto& a : tc.input.args) row.inputs.push_back(lang::render_value(program, tc.input.heap, a));
    row.output = output_of(program, result);
    row.message = message_of(program, v, result);
    row.test = tc;
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string render(const TestTable& table, Format format) {
  switch (format) {
    case Format::kText: return render_text(table);
    case Format::kCsv: return render_csv(table);
    case Format::kJson: return render_json(table);
  }
  return {};
}

std::string emit_table(const lang::Program& program, std::string_view fn, std::span<const TestCase> cases,
                       Format format, const lang::ExecOptions& exec) {
  return render(make_table(program, fn, cases, exec), format);
}

std::vector<TestCase> parse_table_json(std::string_view json) {
  try {
    const Json doc = Json::parse(json);
    const std::string fn = doc.at("function").get<std::string>();
    std::vector<TestCase> out;
    for (const auto& c : doc.at("cases")) out.push_back(case_from(fn, c));
    return out;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed table json: ") + e.what());
  }
}

}  // namespace testforge::harness
