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

// testforge <mode> --src <files> --fn <name> [options]
//
// Exit status: 0 no findings, 1 findings, 2 usage or configuration error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "testforge/harness/config.hpp"
#include "testforge/harness/run.hpp"

namespace {

using testforge::harness::ConfigError;
using testforge::harness::kExitError;
using testforge::harness::RunConfig;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Test generation for mini-C programs"};
  std::string mode;
  std::vector<std::string> sources;
  std::string fn;
  std::string pred;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::string out_dir;
  std::vector<std::string> formats;

  app.add_option("mode", mode, "explore, korat, random, grammar, sequences, all or compare")->required();
  app.add_option("--src", sources, "subject source files")->expected(1, -1);
  app.add_option("--fn", fn, "function under test");
  app.add_option("--pred", pred, "repOK-style predicate for korat mode");
  app.add_option("--config", config_path, "config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "random seed");
  app.add_option("--budget", budget, "main budget of the mode");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", formats, "text, csv or json; may repeat")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config = testforge::harness::load_config(config_path);
    const auto m = testforge::harness::parse_mode(mode);
    if (!m) throw ConfigError("unknown mode '" + mode + "'");
    config.mode = *m;
    if (!sources.empty()) config.sources = sources;
    if (!fn.empty()) config.function = fn;
    if (!pred.empty()) config.korat.predicate = pred;
    if (seed) config.seed = *seed;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!formats.empty()) {
      config.formats.clear();
      for (const auto& f : formats) {
        const auto parsed = testforge::harness::parse_format(f);
        if (!parsed) throw ConfigError("unknown format '" + f + "'");
        config.formats.push_back(*parsed);
      }
    }
    if (budget) testforge::harness::apply_budget(config, *budget);
  } catch (const std::exception& e) {
    std::cerr << "testforge: " << e.what() << "\n";
    return kExitError;
  }
  return testforge::harness::run(config, std::cout, std::cerr);
}
