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

#include "decenc_tools/suite.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include "decenc/framework.hpp"
#include "decenc/intmath.hpp"
#include "decenc/structured.hpp"
#include "decenc/universal.hpp"
#include "json.hpp"

namespace decenc::tools {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(Errc::ConfigParse, "line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T number(const std::string& v, std::size_t line, const std::string& key) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(line, "key '" + key + "': bad value '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v + ",") {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

void set_key(ScenarioConfig& c, const std::string& key, const std::string& v, std::size_t line) {
  if (key == "q") {
    c.q = number<std::uint64_t>(v, line, key);
  } else if (key == "K") {
    c.K = number<std::size_t>(v, line, key);
  } else if (key == "R") {
    c.R = number<std::size_t>(v, line, key);
  } else if (key == "p") {
    c.p = number<std::size_t>(v, line, key);
  } else if (key == "W") {
    c.W = number<std::size_t>(v, line, key);
  } else if (key == "alpha") {
    c.alpha = number<double>(v, line, key);
  } else if (key == "beta") {
    c.beta = number<double>(v, line, key);
  } else if (key == "code") {
    static const char* codes[] = {"random", "grs-systematic", "grs-nonsystematic", "lagrange", "dft", "vandermonde-grid"};
    if (std::find(std::begin(codes), std::end(codes), v) == std::end(codes)) {
      fail(line, "key 'code': unknown code '" + v + "'");
    }
    c.code = v;
  } else if (key == "algorithm") {
    c.algorithms = split_list(v);
    if (c.algorithms.empty()) fail(line, "key 'algorithm': empty list");
    for (const auto& a : c.algorithms) {
      if (a != "universal" && a != "structured" && a != "cauchy" && a != "auto") {
        fail(line, "key 'algorithm': unknown algorithm '" + a + "'");
      }
    }
  } else if (key == "seed") {
    c.seed = number<std::uint64_t>(v, line, key);
  } else if (key == "trials") {
    c.trials = number<std::size_t>(v, line, key);
  } else if (key == "phi-table") {
    c.phi.clear();
    for (const auto& e : split_list(v)) c.phi.push_back(number<std::uint64_t>(e, line, key));
  } else {
    fail(line, "unknown key '" + key + "'");
  }
}

void finish(const ScenarioConfig& c, const std::map<std::string, std::size_t>& seen) {
  for (const char* k : {"q", "K"}) {
    if (!seen.count(k)) fail(c.line, std::string("stanza is missing key '") + k + "'");
  }
  if (c.K == 0) fail(seen.at("K"), "key 'K': must be positive");
  if (c.R && *c.R == 0) fail(seen.at("R"), "key 'R': must be positive (omit it for all-to-all)");
  if (c.p == 0 && seen.count("p")) fail(seen.at("p"), "key 'p': must be positive");
  if (c.W == 0 && seen.count("W")) fail(seen.at("W"), "key 'W': must be positive");
  if (!c.phi.empty() && c.code != "vandermonde-grid") fail(seen.at("phi-table"), "key 'phi-table': only for vandermonde-grid");
}

}  // namespace

std::vector<ScenarioConfig> parse_config(const std::string& text) {
  std::vector<ScenarioConfig> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  ScenarioConfig cur;
  std::map<std::string, std::size_t> seen;
  auto flush = [&] {
    if (seen.empty()) return;
    finish(cur, seen);
    out.push_back(cur);
    cur = ScenarioConfig{};
    seen.clear();
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) {
      if (trim(raw).empty()) flush();
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value, got '" + s + "'");
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "missing key before '='");
    if (value.empty()) fail(line, "key '" + key + "': missing value");
    if (seen.empty()) cur.line = line;
    if (!seen.emplace(key, line).second) fail(line, "key '" + key + "' repeated in stanza");
    set_key(cur, key, value, line);
  }
  flush();
  return out;
}

namespace {

struct Outcome {
  VerifyReport report;
  LowerBounds bounds;
};

Row to_row(const ScenarioConfig& c, const std::string& alg, const Outcome& o, std::uint64_t seed) {
  Row r;
  r.K = c.K;
  r.R = c.R.value_or(0);
  r.p = c.p;
  r.q = c.q;
  r.W = c.W;
  r.algorithm = alg;
  r.C1_measured = o.report.C1;
  r.C2_measured = o.report.C2;
  r.cost_measured = o.report.cost;
  r.C1_predicted = o.report.predicted.C1;
  r.C2_predicted = o.report.predicted.C2;
  r.c1_lowerbound = o.bounds.c1;
  r.c2_lowerbound = o.bounds.c2;
  r.verified = o.report.pass();
  r.seed = seed;
  return r;
}

std::string resolve(const ScenarioConfig& c, const std::string& alg) {
  const bool a2a = !c.R;
  std::vector<std::string> ok{"universal"};
  std::string pick = "universal";
  if (c.code == "grs-systematic" || c.code == "lagrange") {
    ok.push_back("cauchy");
    pick = "cauchy";
  } else if (c.code == "grs-nonsystematic" || c.code == "dft" || c.code == "vandermonde-grid") {
    ok.push_back("structured");
    pick = "structured";
  }
  if (a2a && (c.code == "grs-systematic" || c.code == "grs-nonsystematic" || c.code == "lagrange")) {
    fail(c.line, "code '" + c.code + "' needs R");
  }
  if (!a2a && (c.code == "dft" || c.code == "vandermonde-grid")) {
    fail(c.line, "code '" + c.code + "' is an all-to-all code and takes no R");
  }
  const std::string chosen = alg == "auto" ? pick : alg;
  if (std::find(ok.begin(), ok.end(), chosen) == ok.end()) {
    fail(c.line, "algorithm '" + chosen + "' does not apply to code '" + c.code + "'");
  }
  return chosen;
}

std::uint64_t dft_radix(std::uint64_t K, std::size_t p) {
  auto power_of = [K](std::uint64_t P) {
    std::uint64_t v = 1;
    while (v < K) v *= P;
    return v == K;
  };
  if (power_of(p + 1)) return p + 1;
  for (std::uint64_t P = 2; P <= K; ++P) {
    if (power_of(P)) return P;
  }
  return K;
}

Outcome run_all_to_all(const ScenarioConfig& c, const FieldCtx& ctx, const std::string& alg, std::uint64_t seed,
                       std::size_t trials, std::ostream* trace) {
  NetParams np;
  np.N = c.K;
  np.p = c.p;
  np.alpha = c.alpha;
  np.beta = c.beta;
  np.q = c.q;
  np.W = c.W;
  std::mt19937_64 rng(seed);
  Mat C;
  std::shared_ptr<const Schedule> prog;
  Prediction pred;
  if (c.code == "random") {
    C = random_mat(ctx, c.K, c.K, rng);
  } else if (c.code == "dft") {
    const std::uint64_t P = dft_radix(c.K, c.p);
    const auto H = static_cast<unsigned>(ceil_log(P, c.K));
    C = build_permuted_dft(ctx, c.K, P, H);
    if (alg == "structured") {
      prog = permuted_dft_program(ctx, c.K, P, H, c.p, false, c.W);
      pred = predict(permuted_dft_profile(P, H, c.p), np);
    }
  } else {
    const std::uint64_t P = choose_radix(ctx, {c.K}, c.p).first;
    std::optional<std::vector<std::uint64_t>> phi;
    if (!c.phi.empty()) phi = c.phi;
    const OmegaGrid grid = make_omega_grid(ctx, c.K, P, phi);
    const auto pts = grid.points();
    C = build_vandermonde(ctx, pts, c.K);
    if (alg == "structured") {
      prog = draw_and_loose_program(ctx, grid, c.p, false, c.W);
      pred = predicted_cost_structured(grid, c.p, np);
    }
  }
  Outcome o;
  if (alg == "universal") {
    prog = prepare_and_shoot(ctx, C, c.p, c.W);
    pred = predicted_cost_universal(c.K, c.p, np);
    o.bounds = lower_bounds(c.K, c.p);
  } else {
    const std::size_t c1 = ceil_log(c.p + 1, c.K);
    o.bounds = {c1, c1};
  }
  o.report = verify_all_to_all(ctx, C, *prog, pred, np, trials, seed + 1, trace);
  return o;
}

Outcome run_framework(const ScenarioConfig& c, const FieldCtx& ctx, const std::string& alg, std::uint64_t seed,
                      std::size_t trials, std::ostream* trace) {
  const std::size_t R = *c.R;
  std::mt19937_64 rng(seed);
  EncodingScenario s;
  if (c.code == "random") {
    s = random_scenario(ctx, c.K, R, true, c.p, rng);
  } else if (c.code == "grs-systematic") {
    s = grs_scenario(ctx, c.K, R, true, c.p, rng);
  } else if (c.code == "grs-nonsystematic") {
    s = grs_scenario(ctx, c.K, R, false, c.p, rng);
  } else {
    s = lagrange_scenario(ctx, c.K, R, c.p, rng);
  }
  s.W = c.W;
  s.alpha = c.alpha;
  s.beta = c.beta;
  s.algorithm = alg == "universal" ? Algorithm::Universal : alg == "cauchy" ? Algorithm::Cauchy : Algorithm::Structured;
  Outcome o;
  o.report = verify_scenario(s, trials, seed + 1, trace);
  // Some sink depends on every source (systematic) or every processor on
  // every source (non-systematic); information spreads to at most (p+1)^t
  // processors in t rounds.
  const std::size_t reach = s.systematic ? std::max(c.K, R) + 1 : c.K + R;
  const std::size_t c1 = ceil_log(c.p + 1, reach);
  o.bounds = {c1, c1};
  return o;
}

}  // namespace

std::vector<Row> run_config(const ScenarioConfig& c, const SuiteOptions& options) {
  if (!is_prime(c.q)) fail(c.line, "key 'q': " + std::to_string(c.q) + " is not prime");
  const FieldCtx ctx(c.q);
  const std::uint64_t seed = options.seed.value_or(c.seed);
  const std::size_t trials = options.trials.value_or(c.trials);
  std::vector<Row> rows;
  for (const auto& requested : c.algorithms) {
    const std::string alg = resolve(c, requested);
    const Outcome o = c.R ? run_framework(c, ctx, alg, seed, trials, options.trace)
                          : run_all_to_all(c, ctx, alg, seed, trials, options.trace);
    rows.push_back(to_row(c, alg, o, seed));
  }
  return rows;
}

int run_suite(const std::vector<ScenarioConfig>& configs, std::vector<Row>& rows, const SuiteOptions& options) {
  int status = 0;
  for (const auto& c : configs) {
    for (Row& r : run_config(c, options)) {
      if (!r.verified) status = 1;
      rows.push_back(std::move(r));
    }
  }
  return status;
}

const std::vector<std::string>& column_names() {
  static const std::vector<std::string> names{
      "K",           "R",           "p",          "q",           "W",           "algorithm",
      "C1_measured", "C2_measured", "cost_measured", "C1_predicted", "C2_predicted", "c1_lowerbound",
      "c2_lowerbound", "verified",   "seed"};
  return names;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string emit_table(const std::vector<Row>& rows, Format format) {
  std::ostringstream os;
  if (format == Format::Csv) {
    const auto& names = column_names();
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
    os << "\n";
    for (const Row& r : rows) {
      os << r.K << "," << r.R << "," << r.p << "," << r.q << "," << r.W << "," << r.algorithm << "," << r.C1_measured
         << "," << r.C2_measured << "," << fixed6(r.cost_measured) << "," << r.C1_predicted << "," << r.C2_predicted
         << "," << r.c1_lowerbound << "," << r.c2_lowerbound << "," << (r.verified ? "true" : "false") << ","
         << r.seed << "\n";
    }
    return os.str();
  }
  for (const Row& r : rows) {
    nlohmann::ordered_json j;
    j["K"] = r.K;
    j["R"] = r.R;
    j["p"] = r.p;
    j["q"] = r.q;
    j["W"] = r.W;
    j["algorithm"] = r.algorithm;
    j["C1_measured"] = r.C1_measured;
    j["C2_measured"] = r.C2_measured;
    j["cost_measured"] = r.cost_measured;
    j["C1_predicted"] = r.C1_predicted;
    j["C2_predicted"] = r.C2_predicted;
    j["c1_lowerbound"] = r.c1_lowerbound;
    j["c2_lowerbound"] = r.c2_lowerbound;
    j["verified"] = r.verified;
    j["seed"] = r.seed;
    os << j.dump() << "\n";
  }
  return os.str();
}

}  // namespace decenc::tools
