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

#include <cmath>
#include <random>
#include <set>

#include "decenc/intmath.hpp"
#include "decenc/universal.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace decenc;

namespace {

// Smallest T with T >= 1/2 - 1/p + sqrt(1/4 - 1/p - 1/p^2 + 2K/p^2), evaluated in doubles.
std::size_t c2_bound_float(std::size_t K, std::size_t p) {
  const double P = static_cast<double>(p);
  const double t = 0.5 - 1.0 / P + std::sqrt(0.25 - 1.0 / P - 1.0 / (P * P) + 2.0 * static_cast<double>(K) / (P * P));
  return static_cast<std::size_t>(std::ceil(t - 1e-9));
}

}  // namespace

TEST_CASE("phase lengths") {
  auto check = [](std::size_t K, std::size_t p, unsigned Tp, unsigned Ts, std::uint64_t m, std::uint64_t n) {
    const PhasePlan pl = choose_phase_lengths(K, p);
    CHECK(pl.Tp == Tp);
    CHECK(pl.Ts == Ts);
    CHECK(pl.m == m);
    CHECK(pl.n == n);
    CHECK(pl.delta == n * m - K);
  };
  check(16, 1, 2, 2, 4, 4);
  check(4, 1, 1, 1, 2, 2);
  check(65, 2, 3, 1, 27, 3);
  check(2, 1, 1, 0, 2, 1);
  check(9, 2, 1, 1, 3, 3);
  check(1, 1, 0, 0, 1, 1);
}

TEST_CASE("phase plans cover, stay local and keep the optimal round count") {
  for (std::size_t p = 1; p <= 4; ++p) {
    for (std::size_t K = 2; K <= 2000; ++K) {
      const PhasePlan pl = choose_phase_lengths(K, p);
      CHECK(pl.m == ipow(p + 1, pl.Tp));
      CHECK(pl.n == ipow(p + 1, pl.Ts));
      CHECK(pl.m * pl.n >= K);
      CHECK((pl.n - 1) * pl.m < K);
      CHECK(pl.delta < pl.m);
      CHECK(pl.Tp + pl.Ts == ceil_log(p + 1, K));
    }
  }
}

TEST_CASE("window sets") {
  const PhasePlan pl = choose_phase_lengths(16, 1);
  const WindowSets w = window_sets(3, 16, pl);
  CHECK(std::set<std::size_t>(w.R.begin(), w.R.end()) == std::set<std::size_t>{3, 2, 1, 0});
  CHECK(std::set<std::size_t>(w.S.begin(), w.S.end()) == std::set<std::size_t>{3, 15, 11, 7});
  for (std::size_t K : {5u, 10u, 27u}) {
    const PhasePlan q = choose_phase_lengths(K, 2);
    for (std::size_t k = 0; k < K; ++k) {
      const WindowSets ws = window_sets(k, K, q);
      CHECK(ws.R.size() == q.m);
      CHECK(ws.S.size() == q.n);
    }
  }
}

TEST_CASE("prepare-and-shoot equals the product for every size") {
  std::mt19937_64 rng(4);
  for (std::uint64_t q : {13ull, 257ull}) {
    const FieldCtx f(q);
    for (std::size_t p = 1; p <= 3; ++p) {
      for (std::size_t K = 1; K <= 70; ++K) {
        const Mat C = support::random_matrix(q, K, K, rng);
        const std::size_t W = 1 + K % 2;
        const auto x = support::random_packets(q, K, W, rng);
        const auto np = support::params(K, p, q, W);
        const auto rep = support::run_a2a(*prepare_and_shoot(f, C, p, W), np, x);
        CHECK(rep.outputs == support::ref_xC(q, x, C));
        const Prediction pr = predicted_cost_universal(K, p, np);
        CHECK(rep.C1 == pr.C1);
        CHECK(rep.C2 == pr.C2);
        CHECK(rep.cost == doctest::Approx(pr.cost));
        const PhasePlan pl = choose_phase_lengths(K, p);
        CHECK(rep.C2 == W * ((pl.m - 1) / p + (pl.n - 1) / p));
        CHECK(rep.C1 == ceil_log(p + 1, K));
      }
    }
  }
}

TEST_CASE("identity and small cases") {
  const FieldCtx f(13);
  std::mt19937_64 rng(8);
  for (std::size_t K : {1u, 4u, 7u}) {
    const auto x = support::random_packets(13, K, 1, rng);
    const auto rep = support::run_a2a(*prepare_and_shoot(f, Mat::identity(K), 1), support::params(K, 1, 13), x);
    CHECK(rep.outputs == x);
    if (K > 1) CHECK(rep.C2 > 0);
  }
  const Mat C = support::random_matrix(13, 16, 16, rng);
  const auto x = support::random_packets(13, 16, 1, rng);
  const auto rep = support::run_a2a(*prepare_and_shoot(f, C, 1), support::params(16, 1, 13), x);
  CHECK(rep.outputs == support::ref_xC(13, x, C));
  CHECK(rep.C1 == 4);
  CHECK(rep.C2 == 6);
  CHECK(predicted_cost_universal(2, 1, support::params(2, 1, 13)).C2 == 1);
  CHECK(predicted_cost_universal(9, 2, support::params(9, 2, 13)).C2 == 2);
  CHECK_THROWS_AS(prepare_and_shoot(f, Mat(2, 3), 1), Error);
}

TEST_CASE("width scales C2 and leaves C1 alone") {
  const FieldCtx f(257);
  std::mt19937_64 rng(6);
  for (std::size_t K : {5u, 16u, 33u}) {
    const Mat C = support::random_matrix(257, K, K, rng);
    const auto r1 = support::run_a2a(*prepare_and_shoot(f, C, 2, 1), support::params(K, 2, 257, 1),
                                     support::random_packets(257, K, 1, rng));
    const auto r4 = support::run_a2a(*prepare_and_shoot(f, C, 2, 4), support::params(K, 2, 257, 4),
                                     support::random_packets(257, K, 4, rng));
    CHECK(r4.C1 == r1.C1);
    CHECK(r4.C2 == 4 * r1.C2);
  }
}

TEST_CASE("lower bounds") {
  CHECK(lower_bounds(16, 1).c1 == 4);
  CHECK(lower_bounds(16, 1).c2 == 5);
  CHECK(lower_bounds(4, 1).c2 == 2);
  CHECK(lower_bounds(2, 1).c2 == 1);
  CHECK(c2_lower_bound_real(16, 1) == doctest::Approx(5.0));
  for (std::size_t p = 1; p <= 4; ++p) {
    for (std::size_t K = 2; K <= 3000; ++K) {
      const LowerBounds lb = lower_bounds(K, p);
      CHECK(lb.c1 == ceil_log(p + 1, K));
      CHECK(lb.c2 == c2_bound_float(K, p));
      CHECK(predicted_cost_universal(K, p, support::params(K, p, 13)).C2 >= lb.c2);
    }
  }
}

TEST_CASE("C2 stays within a constant factor of the bound") {
  for (std::size_t K : {64u, 256u, 1024u, 4096u, 16384u}) {
    const double ratio = static_cast<double>(predicted_cost_universal(K, 1, support::params(K, 1, 13)).C2) /
                         static_cast<double>(lower_bounds(K, 1).c2);
    CHECK(ratio <= 1.6);
  }
}
