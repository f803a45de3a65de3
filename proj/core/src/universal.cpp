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

#include "decenc/universal.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "decenc/intmath.hpp"

namespace decenc {

PhasePlan choose_phase_lengths(std::size_t K, std::size_t p) {
  if (K == 0 || p == 0) throw Error(Errc::BadShape, "K and p must be >= 1");
  PhasePlan plan;
  if (K == 1) return plan;
  const std::uint64_t b = p + 1;
  unsigned L = 0;
  while (ipow(b, L + 1) < K) ++L;
  if (L % 2 == 0) {
    plan.Tp = L / 2 + 1;
    plan.Ts = L / 2;
  } else {
    plan.Tp = plan.Ts = (L + 1) / 2;
  }
  for (;;) {
    plan.m = ipow(b, plan.Tp);
    plan.n = ipow(b, plan.Ts);
    if ((plan.n - 1) * plan.m < K) break;
    ++plan.Tp;
    --plan.Ts;
  }
  plan.delta = plan.n * plan.m - K;
  return plan;
}

WindowSets window_sets(std::size_t k, std::size_t K, const PhasePlan& plan) {
  WindowSets w;
  for (std::uint64_t l = 0; l < plan.m; ++l) w.R.push_back((k + K - l % K) % K);
  for (std::uint64_t l = 0; l < plan.n; ++l) w.S.push_back((k + K - (l * plan.m) % K) % K);
  return w;
}

Phase append_prepare_and_shoot(ScheduleBuilder& b, std::size_t round0, const std::vector<Proc>& members,
                               const std::vector<Slot>& in, const CoefFn& C, std::size_t p) {
  const std::size_t K = members.size();
  if (in.size() != K || K == 0) throw Error(Errc::ShapeMismatch, "one input slot per member");
  Phase phase;
  phase.out.resize(K);

  if (K == 1) {
    const Proc k = members[0];
    const Slot src = in[0], dst = b.fresh(k);
    const Elem c = C(0, 0);
    b.local(round0 + 1, k, [src, dst, c](const FieldCtx& f, Store& s) { s[dst] = scaled(f, c, s[src]); });
    phase.out[0] = dst;
    return phase;
  }

  const PhasePlan plan = choose_phase_lengths(K, p);
  const std::size_t base = p + 1;

  // mem[k][l] holds x_{k-l}; offsets are kept as a multiset so wrap-around
  // windows (m > K) still ship the full (p+1)^(t-1) symbols per message.
  std::vector<std::vector<Slot>> mem(K, std::vector<Slot>(plan.m));
  for (std::size_t k = 0; k < K; ++k) {
    mem[k][0] = in[k];
    for (std::uint64_t l = 1; l < plan.m; ++l) mem[k][l] = b.fresh(members[k]);
  }
  std::vector<std::uint64_t> offsets = {0};
  for (unsigned t = 1; t <= plan.Tp; ++t) {
    const std::uint64_t stride = ipow(base, plan.Tp - t);
    std::vector<std::uint64_t> grown = offsets;
    for (std::size_t rho = 1; rho <= p; ++rho) {
      for (std::uint64_t l : offsets) grown.push_back(l + rho * stride);
    }
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t rho = 1; rho <= p; ++rho) {
        const std::size_t d = (k + rho * stride) % K;
        std::vector<Slot> from, to;
        for (std::uint64_t l : offsets) {
          from.push_back(mem[k][l]);
          to.push_back(mem[d][l + rho * stride]);
        }
        if (d == k) {
          b.local(round0 + t + 1, members[k], [from, to](const FieldCtx&, Store& s) {
            for (std::size_t i = 0; i < from.size(); ++i) s[to[i]] = s[from[i]];
          });
        } else {
          b.send(round0 + t, members[k], members[d], std::move(from), std::move(to), Merge::Assign);
        }
      }
    }
    offsets = std::move(grown);
  }

  // w[k][l] accumulates the part of processor k + l m's output known so far.
  const std::size_t shoot0 = round0 + plan.Tp;
  std::vector<std::vector<Slot>> w(K, std::vector<Slot>(plan.n));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::uint64_t l = 0; l < plan.n; ++l) w[k][l] = b.fresh(members[k]);
    const std::vector<Slot> memk = mem[k], wk = w[k];
    const PhasePlan pl = plan;
    b.local(shoot0 + 1, members[k], [memk, wk, pl, k, K, C](const FieldCtx& f, Store& s) {
      for (std::uint64_t l = 0; l < pl.n; ++l) {
        const std::size_t col = (k + l * pl.m) % K;
        Packet acc = zero_packet(s[wk[l]].size());
        for (std::uint64_t j = 0; j < pl.m; ++j) add_scaled(f, acc, C((k + K - j % K) % K, col), s[memk[j]]);
        s[wk[l]] = std::move(acc);
      }
      // The shoot tree covers n m >= K consecutive indices ending at k; the
      // first delta of them are counted twice and all sit in the local window.
      for (std::uint64_t j = 0; j < pl.delta; ++j) sub_scaled(f, s[wk[0]], C((k + K - j % K) % K, k), s[memk[j]]);
    });
  }
  for (unsigned t = 1; t <= plan.Ts; ++t) {
    const std::uint64_t unit = ipow(base, t - 1);
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t rho = 1; rho <= p; ++rho) {
        const std::size_t d = (k + (rho * plan.m * unit) % K) % K;
        std::vector<Slot> from, to;
        for (std::uint64_t l = rho * unit; l < plan.n; l += base * unit) {
          from.push_back(w[k][l]);
          to.push_back(w[d][l - rho * unit]);
        }
        if (d == k) {
          b.local(shoot0 + t + 1, members[k], [from, to](const FieldCtx& f, Store& s) {
            for (std::size_t i = 0; i < from.size(); ++i) add_into(f, s[to[i]], s[from[i]]);
          });
        } else {
          b.send(shoot0 + t, members[k], members[d], std::move(from), std::move(to), Merge::Add);
        }
      }
    }
  }
  for (std::size_t k = 0; k < K; ++k) phase.out[k] = w[k][0];
  phase.rounds = plan.Tp + plan.Ts;
  b.reserve_rounds(round0 + phase.rounds);
  return phase;
}

std::shared_ptr<const Schedule> prepare_and_shoot(const FieldCtx& ctx, const Mat& C, std::size_t p, std::size_t W) {
  if (!C.square() || C.rows() == 0) throw Error(Errc::ShapeMismatch, "coding matrix must be square and nonempty");
  const std::size_t K = C.rows();
  ScheduleBuilder b(ctx, K, W);
  std::vector<Proc> members(K);
  std::vector<Slot> in(K);
  for (std::size_t k = 0; k < K; ++k) {
    members[k] = k;
    in[k] = b.fresh(k);
    b.set_input(k, in[k]);
  }
  Phase ph = append_prepare_and_shoot(b, 0, members, in, coef_of(C), p);
  for (std::size_t k = 0; k < K; ++k) b.set_output(k, ph.out[k]);
  return b.build();
}

std::vector<std::size_t> universal_profile(std::size_t K, std::size_t p) {
  const PhasePlan plan = choose_phase_lengths(K, p);
  std::vector<std::size_t> prof;
  for (unsigned t = 1; t <= plan.Tp; ++t) prof.push_back(ipow(p + 1, t - 1));
  for (unsigned t = 1; t <= plan.Ts; ++t) prof.push_back(plan.n / ipow(p + 1, t));
  return prof;
}

Prediction predicted_cost_universal(std::size_t K, std::size_t p, const NetParams& params) {
  return predict(universal_profile(K, p), params);
}

LowerBounds lower_bounds(std::size_t K, std::size_t p) {
  if (K == 0 || p == 0) throw Error(Errc::BadShape, "K and p must be >= 1");
  LowerBounds lb;
  lb.c1 = ceil_log(p + 1, K);
  const auto P = static_cast<std::int64_t>(p);
  const auto k = static_cast<std::int64_t>(K);
  std::int64_t T = 0;
  while (P * P * T * T - P * (P - 2) * T + 2 * (1 - k) < 0) ++T;
  lb.c2 = static_cast<std::size_t>(T);
  return lb;
}

double c2_lower_bound_real(std::size_t K, std::size_t p) {
  const double P = static_cast<double>(p);
  return 0.5 - 1.0 / P + std::sqrt(0.25 - 1.0 / P - 1.0 / (P * P) + 2.0 * static_cast<double>(K) / (P * P));
}

}  // namespace decenc
