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

#include "decenc/netsim.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "json.hpp"

#include "decenc/intmath.hpp"

namespace decenc {

void validate(const NetParams& params) {
  if (params.N < 1 || params.p < 1 || params.W < 1) throw Error(Errc::BadShape, "N, p and W must be >= 1");
  if (params.alpha < 0 || params.beta < 0) throw Error(Errc::BadShape, "alpha and beta must be >= 0");
  if (params.q < 2) throw Error(Errc::BadShape, "q must be >= 2");
}

unsigned element_bits(std::uint64_t q) { return ceil_log(2, q); }

double cost_of(std::size_t C1, std::size_t C2, const NetParams& params) {
  return params.alpha * static_cast<double>(C1) +
         params.beta * static_cast<double>(element_bits(params.q)) * static_cast<double>(C2);
}

Prediction predict(std::vector<std::size_t> profile, const NetParams& params) {
  Prediction out;
  out.C1 = profile.size();
  for (std::size_t m : profile) out.C2 += m * params.W;
  out.cost = cost_of(out.C1, out.C2, params);
  out.profile = std::move(profile);
  return out;
}

std::vector<std::size_t> parallel(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::max(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  return out;
}

std::vector<std::size_t> sequence(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double cost_of(const RunReport& report, const NetParams& params) { return cost_of(report.C1, report.C2, params); }

RunReport run(const Program& program, const NetParams& params, const std::vector<std::vector<Elem>>& inputs,
              const RunOptions& options) {
  validate(params);
  const std::size_t N = program.processors();
  const std::size_t W = program.width();
  if (N != params.N) throw Error(Errc::ShapeMismatch, "program has " + std::to_string(N) + " processors, params say " + std::to_string(params.N));
  if (W != params.W) throw Error(Errc::ShapeMismatch, "program width differs from params");
  if (inputs.size() != N) throw Error(Errc::ShapeMismatch, "need one input per processor");

  RunReport report;
  auto flag = [&](std::size_t round, std::string what) {
    what = "round " + std::to_string(round) + ": " + what;
    if (options.abort_on_violation) throw Error(Errc::PortViolation, what);
    report.violations.push_back(std::move(what));
  };

  std::vector<std::unique_ptr<ProcState>> states(N);
  std::vector<Elem> zeros(W);
  for (Proc k = 0; k < N; ++k) {
    const auto& in = inputs[k];
    if (!in.empty() && in.size() != W) throw Error(Errc::ShapeMismatch, "input width at processor " + std::to_string(k));
    states[k] = program.init(k, in.empty() ? zeros : in);
  }

  std::vector<std::vector<Message>> inbox(N), next(N);
  std::vector<std::size_t> received(N);
  const std::size_t rounds = program.rounds();
  for (std::size_t t = 1; t <= rounds; ++t) {
    std::size_t mt = 0;
    std::fill(received.begin(), received.end(), 0);
    for (auto& box : next) box.clear();
    for (Proc k = 0; k < N; ++k) {
      std::vector<Message> out = program.step(t, k, *states[k], inbox[k]);
      if (out.size() > params.p) {
        flag(t, "processor " + std::to_string(k) + " sends " + std::to_string(out.size()) + " messages");
      }
      for (auto& msg : out) {
        msg.src = k;
        msg.round = t;
        if (msg.dst >= N || msg.dst == k || msg.payload.empty()) {
          flag(t, "malformed message from " + std::to_string(k) + " to " + std::to_string(msg.dst));
          continue;
        }
        mt = std::max(mt, msg.payload.size());
        if (options.trace != nullptr) {
          nlohmann::json rec = {{"round", t}, {"src", msg.src}, {"dst", msg.dst}, {"len", msg.payload.size()}};
          *options.trace << rec.dump() << '\n';
        }
        ++received[msg.dst];
        // Senders are visited in ascending order, so each inbox ends up sorted
        // by source with ties kept in emission order.
        next[msg.dst].push_back(std::move(msg));
      }
    }
    for (Proc k = 0; k < N; ++k) {
      if (received[k] > params.p) {
        flag(t, "processor " + std::to_string(k) + " receives " + std::to_string(received[k]) + " messages");
      }
    }
    report.mt.push_back(mt);
    std::swap(inbox, next);
  }

  report.C1 = rounds;
  for (std::size_t m : report.mt) report.C2 += m;
  report.cost = cost_of(report, params);
  report.outputs.resize(N);
  for (Proc k = 0; k < N; ++k) report.outputs[k] = program.finalize(k, *states[k], inbox[k]);
  return report;
}

}  // namespace decenc
