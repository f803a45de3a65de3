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
#include <memory>
#include <vector>

#include "decenc/matrix.hpp"
#include "decenc/netsim.hpp"
#include "decenc/schedule.hpp"

namespace decenc {

/// Round split of prepare-and-shoot for K processors.
struct PhasePlan {
  unsigned Tp = 0;
  unsigned Ts = 0;
  std::uint64_t m = 1;  // (p+1)^Tp, the prepare window
  std::uint64_t n = 1;  // (p+1)^Ts, windows gathered by the shoot tree
  std::uint64_t delta = 0;  // n m - K indices counted twice
};

/// Balanced split first; rounds move from shoot to prepare until (n-1) m < K.
/// K = 1 gives the empty plan.
PhasePlan choose_phase_lengths(std::size_t K, std::size_t p);

/// Index sets held after prepare (R) and summed by shoot (S) at processor k.
struct WindowSets {
  std::vector<std::size_t> R;
  std::vector<std::size_t> S;
};
WindowSets window_sets(std::size_t k, std::size_t K, const PhasePlan& plan);

/// Encodes members[r]'s symbol in in[r] so that members[c] ends with
/// sum_r x_r C(r, c). Rounds are round0+1 .. round0+Tp+Ts.
Phase append_prepare_and_shoot(ScheduleBuilder& b, std::size_t round0, const std::vector<Proc>& members,
                               const std::vector<Slot>& in, const CoefFn& C, std::size_t p);

/// Stand-alone program on processors 0..K-1.
std::shared_ptr<const Schedule> prepare_and_shoot(const FieldCtx& ctx, const Mat& C, std::size_t p,
                                                  std::size_t W = 1);

/// Largest message per round, in symbols.
std::vector<std::size_t> universal_profile(std::size_t K, std::size_t p);
Prediction predicted_cost_universal(std::size_t K, std::size_t p, const NetParams& params);

struct LowerBounds {
  std::size_t c1 = 0;
  std::size_t c2 = 0;
};
/// c1 = ceil(log_{p+1} K); c2 is the least integer T with
/// p^2 T^2 - p (p-2) T + 2 (1-K) >= 0, found in integer arithmetic.
LowerBounds lower_bounds(std::size_t K, std::size_t p);
/// The same c2 bound through the square-root closed form, as a cross-check.
double c2_lower_bound_real(std::size_t K, std::size_t p);

}  // namespace decenc
