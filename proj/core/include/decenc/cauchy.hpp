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
#include <optional>
#include <utility>
#include <vector>

#include "decenc/matrix.hpp"
#include "decenc/netsim.hpp"
#include "decenc/schedule.hpp"
#include "decenc/structured.hpp"

namespace decenc {

/// A square block written as diag(left)^-1 V_a^-1 V_b diag(right), where V_a
/// and V_b are B x B Vandermonde matrices on a_points and b_points.
struct CauchyBlockSpec {
  std::size_t B = 0;
  std::vector<Elem> a_points;
  std::vector<Elem> b_points;
  std::vector<Elem> left;
  std::vector<Elem> right;
  /// When present, that Vandermonde stage runs draw-and-loose on this grid;
  /// otherwise prepare-and-shoot on the explicit matrix.
  std::optional<OmegaGrid> a_grid;
  std::optional<OmegaGrid> b_grid;
};

/// Throws on shape, distinctness, zero scalars, or a grid whose points differ.
void validate(const FieldCtx& ctx, const CauchyBlockSpec& spec);

/// Left and right diagonals for block m of the stacked (K >= R) split, with
/// S_m = [mR, (m+1)R). Requires the block to lie inside [0, K).
std::pair<std::vector<Elem>, std::vector<Elem>> phi_psi_diagonals(const FieldCtx& ctx, const std::vector<Elem>& alphas,
                                                                  const std::vector<Elem>& betas,
                                                                  const std::vector<Elem>& u,
                                                                  const std::vector<Elem>& v, std::size_t m);

/// Block m of the stacked split of the systematic GRS parity matrix. A short
/// last block is completed with `dummies`, extra a-points whose rows carry a
/// zero input; the diagonals absorb them so real rows are unchanged.
CauchyBlockSpec stacked_block(const FieldCtx& ctx, const std::vector<Elem>& alphas, const std::vector<Elem>& betas,
                              const std::vector<Elem>& u, const std::vector<Elem>& v, std::size_t m,
                              const std::vector<Elem>& dummies = {});

/// Block m of the side-by-side (K < R) split, T_m = [mK, (m+1)K). A short last
/// block is completed with extra b-points whose outputs are discarded.
CauchyBlockSpec concatenated_block(const FieldCtx& ctx, const std::vector<Elem>& alphas,
                                   const std::vector<Elem>& betas, const std::vector<Elem>& u,
                                   const std::vector<Elem>& v, std::size_t m, const std::vector<Elem>& dummies = {});

/// The product the block program computes, evaluated with the oracle.
Mat cauchy_block_matrix(const FieldCtx& ctx, const CauchyBlockSpec& spec);

/// Four stages: scale by left^-1, encode V_a^-1, encode V_b, scale by right.
Phase append_cauchy_block(ScheduleBuilder& b, std::size_t round0, const CauchyBlockSpec& spec,
                          const std::vector<Proc>& members, const std::vector<Slot>& in, std::size_t p);

std::shared_ptr<const Schedule> cauchy_block_program(const FieldCtx& ctx, const CauchyBlockSpec& spec,
                                                     std::size_t p, std::size_t W = 1);

std::vector<std::size_t> cauchy_block_profile(const CauchyBlockSpec& spec, std::size_t p);
Prediction predicted_cost_cauchy(const CauchyBlockSpec& spec, std::size_t p, const NetParams& params);

}  // namespace decenc
