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

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "decenc/error.hpp"

namespace decenc {

/// An element of GF(q). The value is always reduced, 0 <= value < q.
struct Elem {
  std::uint64_t value = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

enum class FieldOp { Add, Sub, Mul, Div, Pow, Inv };

bool is_prime(std::uint64_t n);

/// Prime factors of n (each listed once, ascending).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Prime field context. Immutable after construction.
class FieldCtx {
 public:
  /// Throws Error(NotPrime) unless q is a prime >= 3.
  explicit FieldCtx(std::uint64_t q);

  std::uint64_t q() const noexcept { return q_; }
  Elem generator() const noexcept { return g_; }
  /// Prime factorization of q - 1.
  const std::vector<std::uint64_t>& factors() const noexcept { return factors_; }
  /// ceil(log2 q): bits needed to ship one element.
  unsigned bits() const noexcept { return bits_; }

  Elem elem(std::uint64_t v) const noexcept { return Elem{v % q_}; }
  Elem elem_signed(std::int64_t v) const noexcept;
  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }

  Elem add(Elem a, Elem b) const noexcept {
    std::uint64_t s = a.value + b.value;
    return Elem{s >= q_ || s < a.value ? s - q_ : s};
  }
  Elem sub(Elem a, Elem b) const noexcept {
    return Elem{a.value >= b.value ? a.value - b.value : a.value + (q_ - b.value)};
  }
  Elem neg(Elem a) const noexcept { return Elem{a.value == 0 ? 0 : q_ - a.value}; }
  Elem mul(Elem a, Elem b) const noexcept {
    return Elem{static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.value) * b.value % q_)};
  }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  /// Throws Error(DivisionByZero) for a = 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// Multiplicative order of a nonzero element, via the factorization of q - 1.
  std::uint64_t order(Elem a) const;

  /// Dispatch form used by the CLI and the property tests. For Pow, b.value is the exponent.
  Elem apply(FieldOp op, Elem a, Elem b) const;

  friend bool operator==(const FieldCtx& x, const FieldCtx& y) noexcept { return x.q_ == y.q_; }

 private:
  std::uint64_t q_;
  Elem g_;
  std::vector<std::uint64_t> factors_;
  unsigned bits_;
};

/// Smallest generator of GF(q)*. Throws Error(NotPrime) for composite q or q < 3.
Elem find_generator(std::uint64_t q);

/// g^((q-1)/K). Throws Error(OrderNotDividing) unless K divides q - 1.
Elem root_of_unity(const FieldCtx& ctx, std::uint64_t K);

/// Exponent e in [0, q-1) with g^e = a. Baby-step giant-step; throws
/// Error(DivisionByZero) for a = 0.
std::uint64_t discrete_log(const FieldCtx& ctx, Elem a);

/// Reverses the H base-P digits of k. Throws Error(OutOfRange) if k >= P^H.
std::uint64_t digit_reverse(std::uint64_t k, std::uint64_t P, unsigned H);

/// A W-wide symbol, F_q^W; all coding coefficients act coordinate-wise.
using Packet = std::vector<Elem>;

Packet zero_packet(std::size_t width);
/// acc += c * x
void add_scaled(const FieldCtx& ctx, Packet& acc, Elem c, const Packet& x);
/// acc -= c * x
void sub_scaled(const FieldCtx& ctx, Packet& acc, Elem c, const Packet& x);
Packet scaled(const FieldCtx& ctx, Elem c, const Packet& x);
void add_into(const FieldCtx& ctx, Packet& acc, const Packet& x);

}  // namespace decenc
