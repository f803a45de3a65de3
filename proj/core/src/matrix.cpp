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

#include "decenc/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "decenc/intmath.hpp"

namespace decenc {

namespace {

std::string dims(const Mat& A) { return std::to_string(A.rows()) + "x" + std::to_string(A.cols()); }

void require_nonzero(const std::vector<Elem>& s, const char* name) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].value == 0) throw Error(Errc::ZeroScalar, std::string(name) + "[" + std::to_string(i) + "] is zero");
  }
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw Error(Errc::BadShape, "entry count does not match dimensions");
}

Mat Mat::from_rows(const FieldCtx& ctx, const std::vector<std::vector<std::uint64_t>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Mat out(rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw Error(Errc::BadShape, "ragged rows");
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = ctx.elem(rows[i][j]);
  }
  return out;
}

Mat Mat::identity(std::size_t n) {
  Mat out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = Elem{1};
  return out;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(Errc::OutOfRange, "block outside " + dims(*this));
  Mat out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  }
  return out;
}

Mat Mat::transpose() const {
  Mat out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Mat Mat::permute_cols(const std::vector<std::size_t>& perm) const {
  if (perm.size() != cols_) throw Error(Errc::ShapeMismatch, "permutation length");
  Mat out(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (perm[j] >= cols_) throw Error(Errc::OutOfRange, "permutation entry");
    for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, perm[j]);
  }
  return out;
}

void require_distinct(const std::vector<Elem>& points) {
  std::vector<Elem> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw Error(Errc::DuplicatePoints, "point " + std::to_string(dup->value) + " repeats");
}

Mat build_vandermonde(const FieldCtx& ctx, const std::vector<Elem>& points, std::size_t rows) {
  if (rows == 0) throw Error(Errc::BadShape, "Vandermonde needs at least one row");
  require_distinct(points);
  Mat out(rows, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    Elem acc = ctx.one();
    for (std::size_t i = 0; i < rows; ++i) {
      out(i, j) = acc;
      acc = ctx.mul(acc, points[j]);
    }
  }
  return out;
}

Mat build_permuted_dft(const FieldCtx& ctx, std::uint64_t K, std::uint64_t P, unsigned H) {
  if (P < 2 || ipow(P, H) != K) throw Error(Errc::BadShape, "K must equal P^H");
  const Elem beta = root_of_unity(ctx, K);
  Mat out(K, K);
  for (std::uint64_t j = 0; j < K; ++j) {
    const Elem col = ctx.pow(beta, digit_reverse(j, P, H));
    Elem acc = ctx.one();
    for (std::uint64_t i = 0; i < K; ++i) {
      out(i, j) = acc;
      acc = ctx.mul(acc, col);
    }
  }
  return out;
}

Mat build_cauchy_like(const FieldCtx& ctx, const std::vector<Elem>& alphas, const std::vector<Elem>& betas,
                      const std::vector<Elem>& u, const std::vector<Elem>& v) {
  if (u.size() != alphas.size() || v.size() != betas.size()) throw Error(Errc::ShapeMismatch, "scalar lengths");
  std::vector<Elem> all = alphas;
  all.insert(all.end(), betas.begin(), betas.end());
  require_distinct(all);
  require_nonzero(u, "u");
  require_nonzero(v, "v");

  const std::size_t K = alphas.size();
  const std::size_t R = betas.size();
  std::vector<Elem> c(K), d(R);
  for (std::size_t k = 0; k < K; ++k) {
    Elem den = ctx.one();
    for (std::size_t t = 0; t < K; ++t) {
      if (t != k) den = ctx.mul(den, ctx.sub(alphas[k], alphas[t]));
    }
    c[k] = ctx.inv(ctx.mul(u[k], den));
  }
  for (std::size_t r = 0; r < R; ++r) {
    Elem num = v[r];
    for (std::size_t k = 0; k < K; ++k) num = ctx.mul(num, ctx.sub(betas[r], alphas[k]));
    d[r] = num;
  }
  Mat out(K, R);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t r = 0; r < R; ++r) {
      out(k, r) = ctx.div(ctx.mul(c[k], d[r]), ctx.sub(betas[r], alphas[k]));
    }
  }
  return out;
}

Mat systematic_grs_A(const FieldCtx& ctx, const std::vector<Elem>& alphas, const std::vector<Elem>& betas,
                     const std::vector<Elem>& u, const std::vector<Elem>& v) {
  if (u.size() != alphas.size() || v.size() != betas.size()) throw Error(Errc::ShapeMismatch, "scalar lengths");
  std::vector<Elem> all = alphas;
  all.insert(all.end(), betas.begin(), betas.end());
  require_distinct(all);
  require_nonzero(u, "u");
  require_nonzero(v, "v");

  const std::size_t K = alphas.size();
  const Mat va = build_vandermonde(ctx, alphas, K);
  const Mat vb = build_vandermonde(ctx, betas, K);
  return matmul(ctx, matmul(ctx, inverse(ctx, matmul(ctx, va, diag(u))), vb), diag(v));
}

Mat diag(const std::vector<Elem>& d) {
  Mat out(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
  return out;
}

Mat matmul(const FieldCtx& ctx, const Mat& A, const Mat& B) {
  if (A.cols() != B.rows()) throw Error(Errc::ShapeMismatch, dims(A) + " times " + dims(B));
  Mat out(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t l = 0; l < A.cols(); ++l) {
      const Elem a = A(i, l);
      if (a.value == 0) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) out(i, j) = ctx.add(out(i, j), ctx.mul(a, B(l, j)));
    }
  }
  return out;
}

std::vector<Elem> vecmat(const FieldCtx& ctx, const std::vector<Elem>& x, const Mat& A) {
  if (x.size() != A.rows()) throw Error(Errc::ShapeMismatch, "vector of " + std::to_string(x.size()) + " times " + dims(A));
  std::vector<Elem> out(A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (x[i].value == 0) continue;
    for (std::size_t j = 0; j < A.cols(); ++j) out[j] = ctx.add(out[j], ctx.mul(x[i], A(i, j)));
  }
  return out;
}

std::vector<Elem> matvec(const FieldCtx& ctx, const Mat& A, const std::vector<Elem>& x) {
  if (x.size() != A.cols()) throw Error(Errc::ShapeMismatch, dims(A) + " times vector of " + std::to_string(x.size()));
  std::vector<Elem> out(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) out[i] = ctx.add(out[i], ctx.mul(A(i, j), x[j]));
  }
  return out;
}

Mat inverse(const FieldCtx& ctx, const Mat& A) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "inverse of " + dims(A));
  const std::size_t n = A.rows();
  Mat work = A;
  Mat out = Mat::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && work(piv, col).value == 0) ++piv;
    if (piv == n) throw Error(Errc::Singular, "no pivot in column " + std::to_string(col));
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(piv, j), work(col, j));
        std::swap(out(piv, j), out(col, j));
      }
    }
    const Elem s = ctx.inv(work(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) = ctx.mul(work(col, j), s);
      out(col, j) = ctx.mul(out(col, j), s);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Elem f = work(i, col);
      if (i == col || f.value == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work(i, j) = ctx.sub(work(i, j), ctx.mul(f, work(col, j)));
        out(i, j) = ctx.sub(out(i, j), ctx.mul(f, out(col, j)));
      }
    }
  }
  return out;
}

std::vector<Elem> solve(const FieldCtx& ctx, const Mat& A, const std::vector<Elem>& b) {
  if (b.size() != A.rows()) throw Error(Errc::ShapeMismatch, "right-hand side length");
  return matvec(ctx, inverse(ctx, A), b);
}

}  // namespace decenc
