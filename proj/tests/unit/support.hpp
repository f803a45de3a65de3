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

#include <cstdint>
#include <random>
#include <vector>

#include "decenc/matrix.hpp"
#include "decenc/netsim.hpp"

// Reference arithmetic written directly on integers, so the library's own
// oracle is never the only witness.
namespace support {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 q) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % q); }

inline u64 powmod(u64 a, u64 e, u64 q) {
  u64 r = 1 % q;
  a %= q;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

/// Inverse by Fermat, independent of the extended-Euclid path.
inline u64 invmod(u64 a, u64 q) { return powmod(a, q - 2, q); }

/// y_c = sum_r x_r C(r, c), one coordinate of a packet at a time.
inline std::vector<decenc::Packet> ref_xC(u64 q, const std::vector<decenc::Packet>& x, const decenc::Mat& C) {
  std::vector<decenc::Packet> y(C.cols());
  const std::size_t W = x.empty() ? 0 : x[0].size();
  for (std::size_t c = 0; c < C.cols(); ++c) {
    y[c].resize(W);
    for (std::size_t w = 0; w < W; ++w) {
      unsigned __int128 acc = 0;
      for (std::size_t r = 0; r < C.rows(); ++r) acc += static_cast<unsigned __int128>(x[r][w].value) * C(r, c).value;
      y[c][w] = decenc::Elem{static_cast<u64>(acc % q)};
    }
  }
  return y;
}

inline decenc::Mat ref_matmul(u64 q, const decenc::Mat& A, const decenc::Mat& B) {
  decenc::Mat out(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < B.cols(); ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t k = 0; k < A.cols(); ++k) acc += static_cast<unsigned __int128>(A(i, k).value) * B(k, j).value;
      out(i, j) = decenc::Elem{static_cast<u64>(acc % q)};
    }
  }
  return out;
}

inline std::vector<decenc::Packet> random_packets(u64 q, std::size_t n, std::size_t W, std::mt19937_64& rng) {
  std::vector<decenc::Packet> x(n, decenc::Packet(W));
  for (auto& pkt : x) {
    for (auto& e : pkt) e = decenc::Elem{rng() % q};
  }
  return x;
}

inline decenc::Mat random_matrix(u64 q, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  decenc::Mat A(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) A(i, j) = decenc::Elem{rng() % q};
  }
  return A;
}

inline decenc::Mat from_ints(const std::vector<std::vector<u64>>& rows) {
  decenc::Mat A(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) A(i, j) = decenc::Elem{rows[i][j]};
  }
  return A;
}

inline decenc::NetParams params(std::size_t N, std::size_t p, u64 q, std::size_t W = 1, double alpha = 1.0,
                                double beta = 1.0) {
  decenc::NetParams np;
  np.N = N;
  np.p = p;
  np.q = q;
  np.W = W;
  np.alpha = alpha;
  np.beta = beta;
  return np;
}

/// Runs an all-to-all program on x and returns the report.
inline decenc::RunReport run_a2a(const decenc::Program& prog, const decenc::NetParams& np,
                                 const std::vector<decenc::Packet>& x) {
  std::vector<std::vector<decenc::Elem>> inputs(x.begin(), x.end());
  inputs.resize(prog.processors());
  return decenc::run(prog, np, inputs);
}

}  // namespace support
