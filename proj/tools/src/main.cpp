/*
 *   Copyright 2026 The decenc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "decenc/error.hpp"
#include "decenc_tools/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Decentralized encoding simulator and cost checker"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Run every scenario in a config file and print a cost table");
  std::string config_path, out_path, format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  bool trace = false;
  run->add_option("config", config_path, "Scenario file")->required();
  run->add_option("--out", out_path, "Write the table here instead of stdout");
  run->add_option("--format", format, "csv or json-lines")->check(CLI::IsMember({"csv", "json-lines"}));
  run->add_option("--seed", seed, "Override every stanza's seed");
  run->add_option("--trials", trials, "Override every stanza's trial count");
  run->add_flag("--trace", trace, "Dump every simulated message to stderr as JSON lines");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "decenc: cannot open " << config_path << "\n";
    return 2;
  }
  std::stringstream text;
  text << in.rdbuf();

  decenc::tools::SuiteOptions opts;
  opts.seed = seed;
  opts.trials = trials;
  if (trace) opts.trace = &std::cerr;
  std::vector<decenc::tools::Row> rows;
  int status = 0;
  try {
    status = decenc::tools::run_suite(decenc::tools::parse_config(text.str()), rows, opts);
  } catch (const decenc::Error& e) {
    std::cerr << "decenc: " << config_path << ": " << e.what() << "\n";
    return 2;
  }

  const auto fmt = format == "csv" ? decenc::tools::Format::Csv : decenc::tools::Format::JsonLines;
  const std::string table = decenc::tools::emit_table(rows, fmt);
  if (out_path.empty()) {
    std::cout << table;
  } else {
    std::ofstream out(out_path);
    out << table;
    if (!out) {
      std::cerr << "decenc: cannot write " << out_path << "\n";
      return 2;
    }
  }
  return status;
}
