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
#include <cstdint>

namespace decenc {

/// base^exp without overflow checks; callers stay at desk scale.
constexpr std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

/// Smallest t with base^t >= n, i.e. ceil(log_base n). n = 0 or 1 gives 0.
constexpr unsigned ceil_log(std::uint64_t base, std::uint64_t n) {
  unsigned t = 0;
  std::uint64_t reach = 1;
  while (reach < n) {
    ++t;
    if (reach > (n - 1) / base) break;  // next step reaches n; also guards overflow
    reach *= base;
  }
  return t;
}

constexpr std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace decenc
