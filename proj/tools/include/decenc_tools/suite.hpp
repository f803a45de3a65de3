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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace decenc::tools {

enum class Format { Csv, JsonLines };

/// One stanza of a suite file. R absent means a pure all-to-all scenario on K processors.
struct ScenarioConfig {
  std::size_t line = 0;
  std::uint64_t q = 0;
  std::size_t K = 0;
  std::optional<std::size_t> R;
  std::size_t p = 1;
  std::size_t W = 1;
  double alpha = 1.0;
  double beta = 1.0;
  std::string code = "random";
  std::vector<std::string> algorithms{"auto"};
  std::uint64_t seed = 1;
  std::size_t trials = 5;
  std::vector<std::uint64_t> phi;
};

/// Stanzas are blank-line separated `key = value` lines; `#` starts a comment.
/// Throws decenc::Error(ConfigParse) naming the line and key.
std::vector<ScenarioConfig> parse_config(const std::string& text);

struct Row {
  std::size_t K = 0, R = 0, p = 0, W = 0;
  std::uint64_t q = 0;
  std::string algorithm;
  std::size_t C1_measured = 0, C2_measured = 0;
  double cost_measured = 0.0;
  std::size_t C1_predicted = 0, C2_predicted = 0;
  std::size_t c1_lowerbound = 0, c2_lowerbound = 0;
  bool verified = false;
  std::uint64_t seed = 0;
};

struct SuiteOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  /// Message dump for every run.
  std::ostream* trace = nullptr;
};

/// Builds, runs and checks one config; one row per listed algorithm.
/// Throws decenc::Error for configs that name an impossible scenario.
std::vector<Row> run_config(const ScenarioConfig& config, const SuiteOptions& options = {});

/// 0 if every row verified, 1 otherwise. Config errors propagate.
int run_suite(const std::vector<ScenarioConfig>& configs, std::vector<Row>& rows, const SuiteOptions& options = {});

const std::vector<std::string>& column_names();
std::string emit_table(const std::vector<Row>& rows, Format format);

}  // namespace decenc::tools
