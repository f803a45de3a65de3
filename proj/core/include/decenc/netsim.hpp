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

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "decenc/field.hpp"

namespace decenc {

using Proc = std::size_t;

/// p-port round model. alpha is paid once per round, beta once per bit of the
/// largest message in that round.
struct NetParams {
  std::size_t N = 1;
  std::size_t p = 1;
  double alpha = 1.0;
  double beta = 1.0;
  std::uint64_t q = 2;
  std::size_t W = 1;
};

/// Throws Error(BadShape) if any field is out of its domain.
void validate(const NetParams& params);

struct Message {
  Proc src = 0;
  Proc dst = 0;
  std::vector<Elem> payload;
  std::size_t round = 0;
};

/// Opaque per-processor state owned by the simulator during a run.
struct ProcState {
  virtual ~ProcState() = default;
};

/// Deterministic per-processor behaviour. Rounds are numbered from 1; the
/// inbox handed to step(t) holds what was delivered at the end of round t-1.
class Program {
 public:
  virtual ~Program() = default;

  virtual std::size_t processors() const = 0;
  virtual std::size_t rounds() const = 0;
  /// Elements per logical symbol.
  virtual std::size_t width() const = 0;

  virtual std::unique_ptr<ProcState> init(Proc k, const std::vector<Elem>& input) const = 0;
  virtual std::vector<Message> step(std::size_t round, Proc k, ProcState& state,
                                    const std::vector<Message>& inbox) const = 0;
  /// Output symbol of processor k, or empty if it produces none.
  virtual std::vector<Elem> finalize(Proc k, ProcState& state, const std::vector<Message>& inbox) const = 0;
};

struct RunReport {
  std::size_t C1 = 0;
  std::vector<std::size_t> mt;
  std::size_t C2 = 0;
  double cost = 0.0;
  std::vector<std::vector<Elem>> outputs;
  std::vector<std::string> violations;
};

struct RunOptions {
  /// Throw Error(PortViolation) on the first violation instead of recording it.
  bool abort_on_violation = true;
  /// One JSON object per message: round, src, dst, len.
  std::ostream* trace = nullptr;
};

/// Inputs: one entry per processor, each empty (all zero) or of the program's width.
RunReport run(const Program& program, const NetParams& params, const std::vector<std::vector<Elem>>& inputs,
              const RunOptions& options = {});

double cost_of(std::size_t C1, std::size_t C2, const NetParams& params);
double cost_of(const RunReport& report, const NetParams& params);

/// ceil(log2 q), with q = 1 treated as zero bits.
unsigned element_bits(std::uint64_t q);

/// Closed-form cost of a schedule. profile[t] is the largest message of round
/// t+1 counted in symbols; C2 is that sum times W.
struct Prediction {
  std::vector<std::size_t> profile;
  std::size_t C1 = 0;
  std::size_t C2 = 0;
  double cost = 0.0;
};

Prediction predict(std::vector<std::size_t> profile, const NetParams& params);
/// Phases running side by side in the same rounds.
std::vector<std::size_t> parallel(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);
/// One phase after another.
std::vector<std::size_t> sequence(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

}  // namespace decenc
