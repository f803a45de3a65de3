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
#include <vector>

#include "decenc/field.hpp"

namespace decenc {

/// Dense row-major matrix over GF(q). The field is passed to every operation
/// rather than stored, so matrices stay plain values.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Mat(std::size_t rows, std::size_t cols, std::vector<Elem> data);
  /// Throws Error(BadShape) on ragged input.
  static Mat from_rows(const FieldCtx& ctx, const std::vector<std::vector<std::uint64_t>>& rows);
  static Mat identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Elem>& data() const noexcept { return data_; }

  /// Rows [r0, r0+nr) and columns [c0, c0+nc); throws Error(OutOfRange).
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Mat transpose() const;
  /// Result column j is column perm[j] of this matrix.
  Mat permute_cols(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Throws Error(DuplicatePoints) if two entries coincide.
void require_distinct(const std::vector<Elem>& points);

/// Entry (i, j) = points[j]^i.
Mat build_vandermonde(const FieldCtx& ctx, const std::vector<Elem>& points, std::size_t rows);

/// D_K with columns reordered by base-P digit reversal; entry (i, j) = beta^(i * rev(j)).
Mat build_permuted_dft(const FieldCtx& ctx, std::uint64_t K, std::uint64_t P, unsigned H);

/// Entry (k, r) = c_k d_r / (betas[r] - alphas[k]) with
/// c_k = u_k^-1 / prod_{t != k}(alpha_k - alpha_t) and d_r = v_r prod_t (beta_r - alpha_t).
Mat build_cauchy_like(const FieldCtx& ctx, const std::vector<Elem>& alphas, const std::vector<Elem>& betas,
                      const std::vector<Elem>& u, const std::vector<Elem>& v);

/// (V_alpha diag(u))^-1 V_beta diag(v), computed by explicit elimination.
Mat systematic_grs_A(const FieldCtx& ctx, const std::vector<Elem>& alphas, const std::vector<Elem>& betas,
                     const std::vector<Elem>& u, const std::vector<Elem>& v);

Mat diag(const std::vector<Elem>& d);

// Reference arithmetic. Deliberately naive; everything else is tested against it.
Mat matmul(const FieldCtx& ctx, const Mat& A, const Mat& B);
/// Row vector times matrix, x A.
std::vector<Elem> vecmat(const FieldCtx& ctx, const std::vector<Elem>& x, const Mat& A);
/// Matrix times column vector, A x.
std::vector<Elem> matvec(const FieldCtx& ctx, const Mat& A, const std::vector<Elem>& x);
/// Gauss-Jordan; throws Error(Singular) or Error(ShapeMismatch).
Mat inverse(const FieldCtx& ctx, const Mat& A);
/// Solves A y = b.
std::vector<Elem> solve(const FieldCtx& ctx, const Mat& A, const std::vector<Elem>& b);

}  // namespace decenc
