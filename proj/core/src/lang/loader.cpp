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

#include "testforge/lang/loader.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "testforge/lang/parser.hpp"
#include "testforge/lang/typecheck.hpp"

namespace testforge::lang {

LoadResult load_source(std::string_view source, const std::string& name) {
  LoadResult out;
  ParseResult parsed = parse(source, name);
  for (const auto& d : parsed.diagnostics) out.errors.push_back(format_diagnostic(name, d));
  if (!parsed.ok()) return out;
  Program program = std::move(*parsed.program);
  for (const auto& d : typecheck(program)) out.errors.push_back(format_diagnostic(name, d));
  if (out.errors.empty()) out.program = std::move(program);
  return out;
}

LoadResult load_files(const std::vector<std::string>& paths) {
  LoadResult out;
  if (paths.empty()) {
    out.errors.push_back("no source files given");
    return out;
  }
  // Files are concatenated; diagnostics name the file and line they came from.
  std::string text;
  std::vector<std::pair<std::string, int>> starts;  // file, first line in text
  int line = 1;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      out.errors.push_back(path + ": cannot read file");
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    if (!content.empty() && content.back() != '\n') content += '\n';
    starts.emplace_back(path, line);
    for (char c : content) line += c == '\n';
    text += content;
  }
  if (!out.errors.empty()) return out;

  auto locate = [&](const Diagnostic& d) {
    std::size_t k = 0;
    while (k + 1 < starts.size() && starts[k + 1].second <= d.loc.line) ++k;
    Diagnostic local = d;
    local.loc.line = d.loc.line - starts[k].second + 1;
    return format_diagnostic(starts[k].first, local);
  };
  ParseResult parsed = parse(text, paths.size() == 1 ? paths[0] : "<sources>");
  for (const auto& d : parsed.diagnostics) out.errors.push_back(locate(d));
  if (!parsed.ok()) return out;
  Program program = std::move(*parsed.program);
  for (const auto& d : typecheck(program)) out.errors.push_back(locate(d));
  if (out.errors.empty()) out.program = std::move(program);
  return out;
}

namespace {

Program unwrap(LoadResult r) {
  if (!r.program) {
    std::string msg;
    for (const auto& e : r.errors) msg += e + "\n";
    throw std::runtime_error(msg);
  }
  return std::move(*r.program);
}

}  // namespace

Program load_or_throw(std::string_view source, const std::string& name) { return unwrap(load_source(source, name)); }

Program load_file_or_throw(const std::string& path) { return unwrap(load_files({path})); }

}  // namespace testforge::lang
