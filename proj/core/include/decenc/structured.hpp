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
#include <vector>

#include "decenc/matrix.hpp"
#include "decenc/netsim.hpp"
#include "decenc/schedule.hpp"

namespace decenc {

/// Roots of unity arranged as a P-ary tree of depth H: vertex e at level h
/// holds beta^(e K / P^h), and its children are e + rho P^(h-1).
class ElementTree {
 public:
  /// Checks the root, leaf and child^P = parent relations while building.
  ElementTree(const FieldCtx& ctx, std::uint64_t P, unsigned H);

  std::uint64_t P() const noexcept { return P_; }
  unsigned H() const noexcept { return H_; }
  /// Value at level h, index e in [0, P^h).
  Elem gamma(unsigned h, std::uint64_t e) const { return levels_.at(h).at(e); }

 private:
  std::uint64_t P_;
  unsigned H_;
  std::vector<std::vector<Elem>> levels_;
};

/// Exponent of x_k in the root polynomial, by expanding the combination
/// f_c(z) = sum_rho z^rho f_{c rho}(z^P) from leaf constants upward.
std::vector<std::uint64_t> polynomial_tree_exponents(std::uint64_t P, unsigned H);

/// The P x P Vandermonde combining one group at step s (0-based) of the
/// permuted DFT. e_rest collects the group's already-fixed reversed digits.
Mat dft_step_matrix(const FieldCtx& ctx, const ElementTree& tree, unsigned s, std::uint64_t e_rest);

/// Members[k] ends with f(beta^rev(k)), or with the inverse transform.
Phase append_permuted_dft(ScheduleBuilder& b, std::size_t round0, const std::vector<Proc>& members,
                          const std::vector<Slot>& in, std::uint64_t P, unsigned H, std::size_t p, bool inverse);

std::shared_ptr<const Schedule> permuted_dft_program(const FieldCtx& ctx, std::uint64_t K, std::uint64_t P,
                                                     unsigned H, std::size_t p, bool inverse, std::size_t W = 1);

/// Evaluation points alpha_i beta_rev(j) for processor i Z + j.
struct OmegaGrid {
  std::uint64_t P = 2;
  unsigned H = 0;
  std::uint64_t Z = 1;
  std::uint64_t M = 1;
  std::vector<std::uint64_t> phi;
  std::vector<Elem> alphas;  // g^phi(i)
  std::vector<Elem> betas;   // indexed by j'

  std::size_t K() const noexcept { return static_cast<std::size_t>(M * Z); }
  /// Point of processor k.
  Elem point(std::size_t k) const;
  std::vector<Elem> points() const;

  /// Any H with P^H dividing K and q - 1. An empty phi means the identity.
  static OmegaGrid build(const FieldCtx& ctx, std::uint64_t K, std::uint64_t P, unsigned H,
                         std::vector<std::uint64_t> phi = {});

 private:
  std::uint64_t q_ = 2;
};

/// Maximal H. Throws Error(PhiNotInjective) or Error(PhiOutOfRange).
OmegaGrid make_omega_grid(const FieldCtx& ctx, std::uint64_t K, std::uint64_t P,
                          std::optional<std::vector<std::uint64_t>> phi = std::nullopt);

/// Members[k] ends with f(point(k)) (or, inverted, recovers the coefficients).
Phase append_draw_and_loose(ScheduleBuilder& b, std::size_t round0, const OmegaGrid& grid,
                            const std::vector<Proc>& members, const std::vector<Slot>& in, std::size_t p,
                            bool inverse);

std::shared_ptr<const Schedule> draw_and_loose_program(const FieldCtx& ctx, const OmegaGrid& grid, std::size_t p,
                                                       bool inverse, std::size_t W = 1);

/// Rounds and per-round symbols of one group step.
std::vector<std::size_t> dft_step_profile(std::uint64_t P, std::size_t p);
std::vector<std::size_t> permuted_dft_profile(std::uint64_t P, unsigned H, std::size_t p);
std::vector<std::size_t> draw_and_loose_profile(const OmegaGrid& grid, std::size_t p);
Prediction predicted_cost_structured(const OmegaGrid& grid, std::size_t p, const NetParams& params);

/// A grid whose points, in processor order, are exactly `points`. Tries P = p+1
/// first, then 2..8, each with maximal H >= 1; a single point is the trivial grid.
std::optional<OmegaGrid> detect_omega_grid(const std::vector<Elem>& points, const FieldCtx& ctx, std::size_t p);

}  // namespace decenc
