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

#include "decenc/structured.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "decenc/intmath.hpp"
#include "decenc/universal.hpp"

namespace decenc {

ElementTree::ElementTree(const FieldCtx& ctx, std::uint64_t P, unsigned H) : P_(P), H_(H) {
  if (P < 2) throw Error(Errc::BadShape, "radix must be >= 2");
  const std::uint64_t K = ipow(P, H);
  const Elem beta = root_of_unity(ctx, K);
  levels_.resize(H + 1);
  for (unsigned h = 0; h <= H; ++h) {
    const std::uint64_t width = ipow(P, h);
    const Elem step = ctx.pow(beta, K / width);
    levels_[h].resize(width);
    Elem acc = ctx.one();
    for (std::uint64_t e = 0; e < width; ++e) {
      levels_[h][e] = acc;
      acc = ctx.mul(acc, step);
    }
  }
  if (levels_[0][0] != ctx.one()) throw Error(Errc::BadShape, "element tree root is not 1");
  for (unsigned h = 1; h <= H; ++h) {
    const std::uint64_t parents = ipow(P, h - 1);
    for (std::uint64_t e = 0; e < levels_[h].size(); ++e) {
      if (ctx.pow(levels_[h][e], P) != levels_[h - 1][e % parents]) {
        throw Error(Errc::BadShape, "element tree child is not a P-th root of its parent");
      }
    }
  }
  for (std::uint64_t e = 0; e < K; ++e) {
    if (levels_[H][e] != ctx.pow(beta, e)) throw Error(Errc::BadShape, "element tree leaf mismatch");
  }
}

std::vector<std::uint64_t> polynomial_tree_exponents(std::uint64_t P, unsigned H) {
  const std::uint64_t K = ipow(P, H);
  // exps[c] lists (k, exponent) pairs for the polynomial whose digit string
  // k_1..k_h is encoded little-endian in c; start from the leaves.
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> level(K);
  for (std::uint64_t k = 0; k < K; ++k) level[k] = {{k, 0}};
  for (unsigned h = H; h > 0; --h) {
    const std::uint64_t parents = ipow(P, h - 1);
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> up(parents);
    for (std::uint64_t c = 0; c < parents; ++c) {
      for (std::uint64_t rho = 0; rho < P; ++rho) {
        for (auto [k, e] : level[c + rho * parents]) up[c].push_back({k, rho + P * e});
      }
    }
    level = std::move(up);
  }
  std::vector<std::uint64_t> b(K);
  for (auto [k, e] : level[0]) b[k] = e;
  return b;
}

Mat dft_step_matrix(const FieldCtx& ctx, const ElementTree& tree, unsigned s, std::uint64_t e_rest) {
  const std::uint64_t P = tree.P();
  std::vector<Elem> pts(P);
  for (std::uint64_t sigma = 0; sigma < P; ++sigma) pts[sigma] = tree.gamma(s + 1, sigma * ipow(P, s) + e_rest);
  return build_vandermonde(ctx, pts, P);
}

namespace {

// One small dense encode inside a group: everyone-to-everyone in a single
// round when the ports allow it, prepare-and-shoot otherwise.
Phase append_group_encode(ScheduleBuilder& b, std::size_t round0, const std::vector<Proc>& group,
                          const std::vector<Slot>& in, const Mat& A, std::size_t p) {
  const std::size_t P = group.size();
  if (P > p + 1) return append_prepare_and_shoot(b, round0, group, in, coef_of(A), p);
  Phase ph;
  ph.out.resize(P);
  ph.rounds = P > 1 ? 1 : 0;
  for (std::size_t sigma = 0; sigma < P; ++sigma) {
    std::vector<Slot> vals(P);
    for (std::size_t rho = 0; rho < P; ++rho) {
      vals[rho] = rho == sigma ? in[sigma] : b.fresh(group[sigma]);
      if (rho != sigma) b.send(round0 + 1, group[rho], group[sigma], {in[rho]}, {vals[rho]}, Merge::Assign);
    }
    std::vector<Elem> coef(P);
    for (std::size_t rho = 0; rho < P; ++rho) coef[rho] = A(rho, sigma);
    const Slot out = b.fresh(group[sigma]);
    b.local(round0 + ph.rounds + 1, group[sigma], [vals, coef, out](const FieldCtx& f, Store& st) {
      Packet acc = zero_packet(st[out].size());
      for (std::size_t rho = 0; rho < vals.size(); ++rho) add_scaled(f, acc, coef[rho], st[vals[rho]]);
      st[out] = std::move(acc);
    });
    ph.out[sigma] = out;
  }
  b.reserve_rounds(round0 + ph.rounds);
  return ph;
}

std::size_t profile_rounds(const std::vector<std::size_t>& prof) { return prof.size(); }

}  // namespace

std::vector<std::size_t> dft_step_profile(std::uint64_t P, std::size_t p) {
  if (P <= p + 1) return {1};
  return universal_profile(P, p);
}

std::vector<std::size_t> permuted_dft_profile(std::uint64_t P, unsigned H, std::size_t p) {
  std::vector<std::size_t> prof;
  for (unsigned h = 0; h < H; ++h) prof = sequence(prof, dft_step_profile(P, p));
  return prof;
}

Phase append_permuted_dft(ScheduleBuilder& b, std::size_t round0, const std::vector<Proc>& members,
                          const std::vector<Slot>& in, std::uint64_t P, unsigned H, std::size_t p, bool inverse) {
  const std::uint64_t K = ipow(P, H);
  if (P < 2 || members.size() != K || in.size() != K) throw Error(Errc::BadShape, "permuted DFT needs P^H members");
  const FieldCtx& ctx = b.ctx();
  const ElementTree tree(ctx, P, H);
  const std::size_t step_rounds = profile_rounds(dft_step_profile(P, p));

  Phase ph;
  ph.out = in;
  for (unsigned i = 0; i < H; ++i) {
    const unsigned s = inverse ? H - 1 - i : i;
    // Step s merges the digit at position H - s (from the least significant end).
    const std::uint64_t unit = ipow(P, H - s - 1);
    std::vector<Slot> next(K);
    for (std::uint64_t k = 0; k < K; ++k) {
      if ((k / unit) % P != 0) continue;
      const std::uint64_t e_rest = digit_reverse(k, P, H) % ipow(P, s);
      Mat A = dft_step_matrix(ctx, tree, s, e_rest);
      if (inverse) A = decenc::inverse(ctx, A);
      std::vector<Proc> group(P);
      std::vector<Slot> gin(P);
      for (std::uint64_t sigma = 0; sigma < P; ++sigma) {
        group[sigma] = members[k + sigma * unit];
        gin[sigma] = ph.out[k + sigma * unit];
      }
      Phase g = append_group_encode(b, round0 + i * step_rounds, group, gin, A, p);
      for (std::uint64_t sigma = 0; sigma < P; ++sigma) next[k + sigma * unit] = g.out[sigma];
    }
    ph.out = std::move(next);
  }
  ph.rounds = H * step_rounds;
  b.reserve_rounds(round0 + ph.rounds);
  return ph;
}

namespace {

std::shared_ptr<const Schedule> standalone(const FieldCtx& ctx, std::size_t K, std::size_t W,
                                           const std::function<Phase(ScheduleBuilder&, const std::vector<Proc>&,
                                                                     const std::vector<Slot>&)>& body) {
  ScheduleBuilder b(ctx, K, W);
  std::vector<Proc> members(K);
  std::vector<Slot> in(K);
  for (std::size_t k = 0; k < K; ++k) {
    members[k] = k;
    in[k] = b.fresh(k);
    b.set_input(k, in[k]);
  }
  Phase ph = body(b, members, in);
  for (std::size_t k = 0; k < K; ++k) b.set_output(k, ph.out[k]);
  return b.build();
}

}  // namespace

std::shared_ptr<const Schedule> permuted_dft_program(const FieldCtx& ctx, std::uint64_t K, std::uint64_t P,
                                                     unsigned H, std::size_t p, bool inverse, std::size_t W) {
  if (P < 2 || ipow(P, H) != K) throw Error(Errc::BadShape, "K must equal P^H");
  root_of_unity(ctx, K);
  return standalone(ctx, K, W, [&](ScheduleBuilder& b, const std::vector<Proc>& m, const std::vector<Slot>& in) {
    return append_permuted_dft(b, 0, m, in, P, H, p, inverse);
  });
}

Elem OmegaGrid::point(std::size_t k) const {
  const std::size_t i = k / Z, j = k % Z;
  return Elem{static_cast<std::uint64_t>(static_cast<unsigned __int128>(alphas.at(i).value) *
                                         betas.at(digit_reverse(j, P, H)).value % q_)};
}

std::vector<Elem> OmegaGrid::points() const {
  std::vector<Elem> out(K());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = point(k);
  return out;
}

OmegaGrid OmegaGrid::build(const FieldCtx& ctx, std::uint64_t K, std::uint64_t P, unsigned H,
                           std::vector<std::uint64_t> phi) {
  if (P < 2) throw Error(Errc::BadShape, "radix must be >= 2");
  if (K == 0 || K > ctx.q() - 1) throw Error(Errc::FieldTooSmall, "grid of " + std::to_string(K) + " points");
  OmegaGrid g;
  g.P = P;
  g.H = H;
  g.Z = ipow(P, H);
  g.q_ = ctx.q();
  if (K % g.Z != 0 || (ctx.q() - 1) % g.Z != 0) throw Error(Errc::BadShape, "P^H must divide K and q - 1");
  g.M = K / g.Z;
  const std::uint64_t range = (ctx.q() - 1) / g.Z;
  if (phi.empty()) {
    phi.resize(g.M);
    std::iota(phi.begin(), phi.end(), 0);
  }
  if (phi.size() != g.M) throw Error(Errc::ShapeMismatch, "phi needs one entry per grid row");
  std::vector<std::uint64_t> seen = phi;
  std::sort(seen.begin(), seen.end());
  if (seen.back() >= range) throw Error(Errc::PhiOutOfRange, "phi value " + std::to_string(seen.back()));
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw Error(Errc::PhiNotInjective, "phi repeats");
  g.phi = std::move(phi);
  for (std::uint64_t e : g.phi) g.alphas.push_back(ctx.pow(ctx.generator(), e));
  for (std::uint64_t jr = 0; jr < g.Z; ++jr) g.betas.push_back(ctx.pow(ctx.generator(), jr * range));
  require_distinct(g.points());
  return g;
}

OmegaGrid make_omega_grid(const FieldCtx& ctx, std::uint64_t K, std::uint64_t P,
                          std::optional<std::vector<std::uint64_t>> phi) {
  if (P < 2) throw Error(Errc::BadShape, "radix must be >= 2");
  if (K == 0 || K > ctx.q() - 1) throw Error(Errc::FieldTooSmall, "grid of " + std::to_string(K) + " points");
  const std::uint64_t common = std::gcd(K, ctx.q() - 1);
  unsigned H = 0;
  while (common % ipow(P, H + 1) == 0) ++H;
  return OmegaGrid::build(ctx, K, P, H, phi.value_or(std::vector<std::uint64_t>{}));
}

Phase append_draw_and_loose(ScheduleBuilder& b, std::size_t round0, const OmegaGrid& grid,
                            const std::vector<Proc>& members, const std::vector<Slot>& in, std::size_t p,
                            bool inverse) {
  const std::size_t K = grid.K(), Z = grid.Z, M = grid.M;
  if (members.size() != K || in.size() != K) throw Error(Errc::ShapeMismatch, "one member per grid point");
  const FieldCtx& ctx = b.ctx();

  std::vector<Elem> az(M);
  for (std::size_t i = 0; i < M; ++i) az[i] = ctx.pow(grid.alphas[i], Z);
  Mat VM = build_vandermonde(ctx, az, M);
  if (inverse) VM = decenc::inverse(ctx, VM);
  const CoefFn vm = coef_of(VM);

  std::vector<Elem> twist(K);
  for (std::size_t k = 0; k < K; ++k) {
    const Elem a = ctx.pow(grid.alphas[k / Z], k % Z);
    twist[k] = inverse ? ctx.inv(a) : a;
  }

  auto draw = [&](std::size_t r0, const std::vector<Slot>& src) {
    Phase ph;
    ph.out.resize(K);
    for (std::size_t j = 0; j < Z; ++j) {
      std::vector<Proc> col(M);
      std::vector<Slot> cin(M);
      for (std::size_t i = 0; i < M; ++i) {
        col[i] = members[i * Z + j];
        cin[i] = src[i * Z + j];
      }
      Phase c = append_prepare_and_shoot(b, r0, col, cin, vm, p);
      ph.rounds = c.rounds;
      for (std::size_t i = 0; i < M; ++i) ph.out[i * Z + j] = c.out[i];
    }
    return ph;
  };
  auto loose = [&](std::size_t r0, const std::vector<Slot>& src) {
    Phase ph;
    ph.out.resize(K);
    for (std::size_t i = 0; i < M; ++i) {
      std::vector<Proc> row(members.begin() + i * Z, members.begin() + (i + 1) * Z);
      std::vector<Slot> rin(src.begin() + i * Z, src.begin() + (i + 1) * Z);
      Phase r = append_permuted_dft(b, r0, row, rin, grid.P, grid.H, p, inverse);
      ph.rounds = r.rounds;
      std::copy(r.out.begin(), r.out.end(), ph.out.begin() + i * Z);
    }
    return ph;
  };

  Phase first = inverse ? loose(round0, in) : draw(round0, in);
  Phase twisted = append_scale(b, round0 + first.rounds + 1, members, first.out, twist);
  Phase second = inverse ? draw(round0 + first.rounds, twisted.out) : loose(round0 + first.rounds, twisted.out);
  Phase ph{second.out, first.rounds + second.rounds};
  b.reserve_rounds(round0 + ph.rounds);
  return ph;
}

std::shared_ptr<const Schedule> draw_and_loose_program(const FieldCtx& ctx, const OmegaGrid& grid, std::size_t p,
                                                       bool inverse, std::size_t W) {
  return standalone(ctx, grid.K(), W, [&](ScheduleBuilder& b, const std::vector<Proc>& m, const std::vector<Slot>& in) {
    return append_draw_and_loose(b, 0, grid, m, in, p, inverse);
  });
}

std::vector<std::size_t> draw_and_loose_profile(const OmegaGrid& grid, std::size_t p) {
  return sequence(universal_profile(grid.M, p), permuted_dft_profile(grid.P, grid.H, p));
}

Prediction predicted_cost_structured(const OmegaGrid& grid, std::size_t p, const NetParams& params) {
  return predict(draw_and_loose_profile(grid, p), params);
}

std::optional<OmegaGrid> detect_omega_grid(const std::vector<Elem>& points, const FieldCtx& ctx, std::size_t p) {
  const std::uint64_t K = points.size();
  if (K == 0 || K > ctx.q() - 1) return std::nullopt;
  for (Elem e : points) {
    if (e.value == 0 || e.value >= ctx.q()) return std::nullopt;
  }
  if (K == 1) return OmegaGrid::build(ctx, 1, p + 1, 0, {discrete_log(ctx, points[0])});

  std::vector<std::uint64_t> radices = {p + 1};
  for (std::uint64_t P = 2; P <= 8; ++P) {
    if (P != p + 1) radices.push_back(P);
  }
  const std::uint64_t common = std::gcd(K, ctx.q() - 1);
  for (std::uint64_t P : radices) {
    unsigned H = 0;
    while (common % ipow(P, H + 1) == 0) ++H;
    if (H == 0) continue;
    const std::uint64_t Z = ipow(P, H), M = K / Z, range = (ctx.q() - 1) / Z;
    // Column 0 of every row is alpha_i itself, which pins phi.
    std::vector<std::uint64_t> phi(M);
    bool ok = true;
    for (std::uint64_t i = 0; i < M && ok; ++i) {
      phi[i] = discrete_log(ctx, points[i * Z]);
      ok = phi[i] < range;
    }
    if (!ok) continue;
    std::vector<std::uint64_t> sorted = phi;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    OmegaGrid g = OmegaGrid::build(ctx, K, P, H, phi);
    if (g.points() == points) return g;
  }
  return std::nullopt;
}

}  // namespace decenc
