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

#include "decenc/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "decenc/intmath.hpp"

namespace decenc {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotPrime: return "NotPrime";
    case Errc::OrderNotDividing: return "OrderNotDividing";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::ZeroScalar: return "ZeroScalar";
    case Errc::Singular: return "Singular";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadShape: return "BadShape";
    case Errc::PortViolation: return "PortViolation";
    case Errc::PhiNotInjective: return "PhiNotInjective";
    case Errc::PhiOutOfRange: return "PhiOutOfRange";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::ConfigParse: return "ConfigParseError";
  }
  return "Unknown";
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1U;
  }
  return r;
}

// Pollard's rho with Brent-style cycle detection; n must be composite.
std::uint64_t rho_factor(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void collect_factors(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (n % small == 0) {
      out.push_back(small);
      while (n % small == 0) n /= small;
      collect_factors(n, out);
      return;
    }
  }
  std::uint64_t d = rho_factor(n);
  collect_factors(d, out);
  collect_factors(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These bases are a deterministic witness set for every 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  collect_factors(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Elem find_generator(std::uint64_t q) {
  if (q < 3 || !is_prime(q)) {
    throw Error(Errc::NotPrime, "q = " + std::to_string(q) + " is not a prime >= 3");
  }
  const auto factors = prime_factors(q - 1);
  for (std::uint64_t cand = 2; cand < q; ++cand) {
    bool full_order = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t r) {
      return powmod(cand, (q - 1) / r, q) != 1;
    });
    if (full_order) return Elem{cand};
  }
  throw Error(Errc::NotPrime, "no generator found for q = " + std::to_string(q));
}

FieldCtx::FieldCtx(std::uint64_t q)
    : q_(q), g_(find_generator(q)), factors_(prime_factors(q - 1)), bits_(ceil_log(2, q)) {}

Elem FieldCtx::elem_signed(std::int64_t v) const noexcept {
  if (v >= 0) return elem(static_cast<std::uint64_t>(v));
  return neg(elem(static_cast<std::uint64_t>(-(v + 1)) + 1));
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const noexcept { return Elem{powmod(a.value, e, q_)}; }

Elem FieldCtx::inv(Elem a) const {
  if (a.value == 0) throw Error(Errc::DivisionByZero, "inverse of 0");
  return pow(a, q_ - 2);
}

std::uint64_t FieldCtx::order(Elem a) const {
  if (a.value == 0) throw Error(Errc::DivisionByZero, "order of 0");
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t r : factors_) {
    while (ord % r == 0 && pow(a, ord / r) == one()) ord /= r;
  }
  return ord;
}

Elem FieldCtx::apply(FieldOp op, Elem a, Elem b) const {
  switch (op) {
    case FieldOp::Add: return add(a, b);
    case FieldOp::Sub: return sub(a, b);
    case FieldOp::Mul: return mul(a, b);
    case FieldOp::Div: return div(a, b);
    case FieldOp::Pow: return pow(a, b.value);
    case FieldOp::Inv: return inv(a);
  }
  return zero();
}

Elem root_of_unity(const FieldCtx& ctx, std::uint64_t K) {
  if (K == 0 || (ctx.q() - 1) % K != 0) {
    throw Error(Errc::OrderNotDividing,
                std::to_string(K) + " does not divide q - 1 = " + std::to_string(ctx.q() - 1));
  }
  return ctx.pow(ctx.generator(), (ctx.q() - 1) / K);
}

std::uint64_t discrete_log(const FieldCtx& ctx, Elem a) {
  if (a.value == 0) throw Error(Errc::DivisionByZero, "logarithm of 0");
  const std::uint64_t n = ctx.q() - 1;
  auto step = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  baby.reserve(step);
  Elem cur = ctx.one();
  for (std::uint64_t j = 0; j < step; ++j) {
    baby.emplace(cur.value, j);
    cur = ctx.mul(cur, ctx.generator());
  }
  const Elem giant = ctx.inv(ctx.pow(ctx.generator(), step));
  Elem probe = a;
  for (std::uint64_t i = 0; i <= step; ++i) {
    auto hit = baby.find(probe.value);
    if (hit != baby.end()) return (i * step + hit->second) % n;
    probe = ctx.mul(probe, giant);
  }
  throw Error(Errc::OutOfRange, "no logarithm found");
}

std::uint64_t digit_reverse(std::uint64_t k, std::uint64_t P, unsigned H) {
  if (P < 2 && H > 0) throw Error(Errc::OutOfRange, "radix must be >= 2");
  if (k >= ipow(P, H)) {
    throw Error(Errc::OutOfRange, std::to_string(k) + " has more than " + std::to_string(H) + " digits");
  }
  std::uint64_t rev = 0;
  for (unsigned h = 0; h < H; ++h) {
    rev = rev * P + k % P;
    k /= P;
  }
  return rev;
}

Packet zero_packet(std::size_t width) { return Packet(width, Elem{0}); }

void add_scaled(const FieldCtx& ctx, Packet& acc, Elem c, const Packet& x) {
  if (c.value == 0) return;
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = ctx.add(acc[i], ctx.mul(c, x[i]));
}

void sub_scaled(const FieldCtx& ctx, Packet& acc, Elem c, const Packet& x) {
  if (c.value == 0) return;
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = ctx.sub(acc[i], ctx.mul(c, x[i]));
}

Packet scaled(const FieldCtx& ctx, Elem c, const Packet& x) {
  Packet out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = ctx.mul(c, x[i]);
  return out;
}

void add_into(const FieldCtx& ctx, Packet& acc, const Packet& x) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = ctx.add(acc[i], x[i]);
}

}  // namespace decenc
