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

#include "decenc/cauchy.hpp"

#include <string>

#include "decenc/universal.hpp"

namespace decenc {

namespace {

Elem prod_diff(const FieldCtx& ctx, Elem x, const std::vector<Elem>& pts) {
  Elem acc = ctx.one();
  for (Elem t : pts) acc = ctx.mul(acc, ctx.sub(x, t));
  return acc;
}

void require_nonzero(const std::vector<Elem>& s, const char* name) {
  for (Elem e : s) {
    if (e.value == 0) throw Error(Errc::ZeroScalar, std::string(name) + " has a zero entry");
  }
}

std::vector<Elem> slice(const std::vector<Elem>& v, std::size_t begin, std::size_t end) {
  return {v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(end)};
}

}  // namespace

void validate(const FieldCtx& ctx, const CauchyBlockSpec& spec) {
  const std::size_t B = spec.B;
  if (B == 0 || spec.a_points.size() != B || spec.b_points.size() != B || spec.left.size() != B ||
      spec.right.size() != B) {
    throw Error(Errc::ShapeMismatch, "Cauchy block vectors must all have length B");
  }
  require_distinct(spec.a_points);
  require_distinct(spec.b_points);
  require_nonzero(spec.left, "left diagonal");
  require_nonzero(spec.right, "right diagonal");
  if (spec.a_grid && spec.a_grid->points() != spec.a_points) throw Error(Errc::BadShape, "a-grid points differ");
  if (spec.b_grid && spec.b_grid->points() != spec.b_points) throw Error(Errc::BadShape, "b-grid points differ");
  (void)ctx;
}

std::pair<std::vector<Elem>, std::vector<Elem>> phi_psi_diagonals(const FieldCtx& ctx, const std::vector<Elem>& alphas,
                                                                  const std::vector<Elem>& betas,
                                                                  const std::vector<Elem>& u,
                                                                  const std::vector<Elem>& v, std::size_t m) {
  const std::size_t K = alphas.size(), R = betas.size();
  if (u.size() != K || v.size() != R || R == 0) throw Error(Errc::ShapeMismatch, "scalar lengths");
  if ((m + 1) * R > K) throw Error(Errc::OutOfRange, "block " + std::to_string(m) + " leaves [0, K)");
  std::vector<Elem> rest = slice(alphas, 0, m * R);
  const std::vector<Elem> tail = slice(alphas, (m + 1) * R, K);
  rest.insert(rest.end(), tail.begin(), tail.end());
  std::vector<Elem> phi(R), psi(R);
  for (std::size_t s = 0; s < R; ++s) phi[s] = ctx.mul(u[m * R + s], prod_diff(ctx, alphas[m * R + s], rest));
  for (std::size_t r = 0; r < R; ++r) psi[r] = ctx.mul(v[r], prod_diff(ctx, betas[r], rest));
  require_nonzero(phi, "phi");
  require_nonzero(psi, "psi");
  return {phi, psi};
}

CauchyBlockSpec stacked_block(const FieldCtx& ctx, const std::vector<Elem>& alphas, const std::vector<Elem>& betas,
                              const std::vector<Elem>& u, const std::vector<Elem>& v, std::size_t m,
                              const std::vector<Elem>& dummies) {
  const std::size_t K = alphas.size(), R = betas.size();
  if (u.size() != K || v.size() != R || R == 0) throw Error(Errc::ShapeMismatch, "scalar lengths");
  const std::size_t begin = m * R;
  if (begin >= K) throw Error(Errc::OutOfRange, "block " + std::to_string(m) + " has no rows");
  const std::size_t end = std::min(K, begin + R);
  if ((end - begin) + dummies.size() != R) throw Error(Errc::ShapeMismatch, "dummy count must complete the block");

  std::vector<Elem> rest = slice(alphas, 0, begin);
  const std::vector<Elem> tail = slice(alphas, end, K);
  rest.insert(rest.end(), tail.begin(), tail.end());

  CauchyBlockSpec spec;
  spec.B = R;
  spec.a_points = slice(alphas, begin, end);
  spec.a_points.insert(spec.a_points.end(), dummies.begin(), dummies.end());
  spec.b_points = betas;
  std::vector<Elem> all = alphas;
  all.insert(all.end(), betas.begin(), betas.end());
  all.insert(all.end(), dummies.begin(), dummies.end());
  require_distinct(all);
  for (std::size_t s = 0; s < R; ++s) {
    if (begin + s >= end) {
      spec.left.push_back(ctx.one());
      continue;
    }
    const Elem a = alphas[begin + s];
    spec.left.push_back(ctx.div(ctx.mul(u[begin + s], prod_diff(ctx, a, rest)), prod_diff(ctx, a, dummies)));
  }
  for (std::size_t r = 0; r < R; ++r) {
    spec.right.push_back(ctx.div(ctx.mul(v[r], prod_diff(ctx, betas[r], rest)), prod_diff(ctx, betas[r], dummies)));
  }
  require_nonzero(spec.left, "left diagonal");
  require_nonzero(spec.right, "right diagonal");
  return spec;
}

CauchyBlockSpec concatenated_block(const FieldCtx& ctx, const std::vector<Elem>& alphas,
                                   const std::vector<Elem>& betas, const std::vector<Elem>& u,
                                   const std::vector<Elem>& v, std::size_t m, const std::vector<Elem>& dummies) {
  const std::size_t K = alphas.size(), R = betas.size();
  if (u.size() != K || v.size() != R || K == 0) throw Error(Errc::ShapeMismatch, "scalar lengths");
  const std::size_t begin = m * K;
  if (begin >= R) throw Error(Errc::OutOfRange, "block " + std::to_string(m) + " has no columns");
  const std::size_t end = std::min(R, begin + K);
  if ((end - begin) + dummies.size() != K) throw Error(Errc::ShapeMismatch, "dummy count must complete the block");

  std::vector<Elem> all = alphas;
  all.insert(all.end(), betas.begin(), betas.end());
  require_distinct(all);
  std::vector<Elem> b_all = slice(betas, begin, end);
  b_all.insert(b_all.end(), dummies.begin(), dummies.end());

  CauchyBlockSpec spec;
  spec.B = K;
  spec.a_points = alphas;
  spec.b_points = b_all;
  spec.left = u;
  spec.right = slice(v, begin, end);
  spec.right.resize(K, ctx.one());
  require_nonzero(spec.left, "left diagonal");
  require_nonzero(spec.right, "right diagonal");
  return spec;
}

Mat cauchy_block_matrix(const FieldCtx& ctx, const CauchyBlockSpec& spec) {
  validate(ctx, spec);
  std::vector<Elem> left_inv(spec.B);
  for (std::size_t i = 0; i < spec.B; ++i) left_inv[i] = ctx.inv(spec.left[i]);
  const Mat va = build_vandermonde(ctx, spec.a_points, spec.B);
  const Mat vb = build_vandermonde(ctx, spec.b_points, spec.B);
  return matmul(ctx, matmul(ctx, matmul(ctx, diag(left_inv), inverse(ctx, va)), vb), diag(spec.right));
}

Phase append_cauchy_block(ScheduleBuilder& b, std::size_t round0, const CauchyBlockSpec& spec,
                          const std::vector<Proc>& members, const std::vector<Slot>& in, std::size_t p) {
  const FieldCtx& ctx = b.ctx();
  validate(ctx, spec);
  if (members.size() != spec.B || in.size() != spec.B) throw Error(Errc::ShapeMismatch, "one member per block row");

  std::vector<Elem> left_inv(spec.B);
  for (std::size_t i = 0; i < spec.B; ++i) left_inv[i] = ctx.inv(spec.left[i]);
  Phase scaled_in = append_scale(b, round0 + 1, members, in, left_inv);

  Phase first = spec.a_grid
                    ? append_draw_and_loose(b, round0, *spec.a_grid, members, scaled_in.out, p, true)
                    : append_prepare_and_shoot(b, round0, members, scaled_in.out,
                                               coef_of(inverse(ctx, build_vandermonde(ctx, spec.a_points, spec.B))), p);
  const std::size_t mid = round0 + first.rounds;
  Phase second = spec.b_grid
                     ? append_draw_and_loose(b, mid, *spec.b_grid, members, first.out, p, false)
                     : append_prepare_and_shoot(b, mid, members, first.out,
                                                coef_of(build_vandermonde(ctx, spec.b_points, spec.B)), p);
  const std::size_t end = mid + second.rounds;
  Phase out = append_scale(b, end + 1, members, second.out, spec.right);
  out.rounds = first.rounds + second.rounds;
  b.reserve_rounds(end);
  return out;
}

std::shared_ptr<const Schedule> cauchy_block_program(const FieldCtx& ctx, const CauchyBlockSpec& spec,
                                                     std::size_t p, std::size_t W) {
  validate(ctx, spec);
  ScheduleBuilder b(ctx, spec.B, W);
  std::vector<Proc> members(spec.B);
  std::vector<Slot> in(spec.B);
  for (std::size_t k = 0; k < spec.B; ++k) {
    members[k] = k;
    in[k] = b.fresh(k);
    b.set_input(k, in[k]);
  }
  Phase ph = append_cauchy_block(b, 0, spec, members, in, p);
  for (std::size_t k = 0; k < spec.B; ++k) b.set_output(k, ph.out[k]);
  return b.build();
}

std::vector<std::size_t> cauchy_block_profile(const CauchyBlockSpec& spec, std::size_t p) {
  auto stage = [&](const std::optional<OmegaGrid>& g) {
    return g ? draw_and_loose_profile(*g, p) : universal_profile(spec.B, p);
  };
  return sequence(stage(spec.a_grid), stage(spec.b_grid));
}

Prediction predicted_cost_cauchy(const CauchyBlockSpec& spec, std::size_t p, const NetParams& params) {
  return predict(cauchy_block_profile(spec, p), params);
}

}  // namespace decenc
