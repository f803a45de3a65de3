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

#include <benchmark/benchmark.h>

#include <random>

#include "decenc/framework.hpp"
#include "decenc/structured.hpp"
#include "decenc/universal.hpp"

using namespace decenc;

namespace {

std::vector<std::vector<Elem>> random_inputs(const FieldCtx& f, std::size_t n, std::size_t W, std::mt19937_64& rng) {
  std::vector<std::vector<Elem>> x(n, std::vector<Elem>(W));
  for (auto& pkt : x) {
    for (Elem& e : pkt) e = random_elem(f, rng);
  }
  return x;
}

NetParams params_for(std::size_t N, std::size_t p, std::uint64_t q, std::size_t W = 1) {
  NetParams np;
  np.N = N;
  np.p = p;
  np.q = q;
  np.W = W;
  return np;
}

void BM_FieldMul(benchmark::State& state) {
  const FieldCtx f(static_cast<std::uint64_t>(state.range(0)));
  std::mt19937_64 rng(1);
  Elem a = random_nonzero(f, rng);
  const Elem b = random_nonzero(f, rng);
  for (auto _ : state) {
    a = f.mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul)->Arg(257)->Arg(65537)->Arg(2305843009213693951LL);

void BM_FieldInv(benchmark::State& state) {
  const FieldCtx f(static_cast<std::uint64_t>(state.range(0)));
  std::mt19937_64 rng(2);
  Elem a = random_nonzero(f, rng);
  for (auto _ : state) {
    a = f.inv(a);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldInv)->Arg(257)->Arg(2305843009213693951LL);

void BM_Inverse(benchmark::State& state) {
  const FieldCtx f(65537);
  std::mt19937_64 rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Mat A = random_mat(f, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(f, A));
}
BENCHMARK(BM_Inverse)->Arg(16)->Arg(64)->Arg(128);

// Build plus simulate, the cost of one verified run.
void BM_PrepareAndShoot(benchmark::State& state) {
  const FieldCtx f(257);
  std::mt19937_64 rng(4);
  const auto K = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<std::size_t>(state.range(1));
  const Mat C = random_mat(f, K, K, rng);
  const auto x = random_inputs(f, K, 1, rng);
  const NetParams np = params_for(K, p, 257);
  for (auto _ : state) {
    const auto prog = prepare_and_shoot(f, C, p);
    benchmark::DoNotOptimize(run(*prog, np, x));
  }
  state.counters["C2"] = static_cast<double>(predicted_cost_universal(K, p, np).C2);
}
BENCHMARK(BM_PrepareAndShoot)->Args({64, 1})->Args({256, 1})->Args({1024, 1})->Args({256, 3})->Unit(benchmark::kMillisecond);

void BM_PermutedDft(benchmark::State& state) {
  const FieldCtx f(65537);
  std::mt19937_64 rng(5);
  const auto H = static_cast<unsigned>(state.range(0));
  const std::uint64_t K = std::uint64_t{1} << H;
  const auto x = random_inputs(f, K, 1, rng);
  const NetParams np = params_for(K, 1, 65537);
  for (auto _ : state) {
    const auto prog = permuted_dft_program(f, K, 2, H, 1, false);
    benchmark::DoNotOptimize(run(*prog, np, x));
  }
}
BENCHMARK(BM_PermutedDft)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_DrawAndLoose(benchmark::State& state) {
  const FieldCtx f(65537);
  std::mt19937_64 rng(6);
  const auto K = static_cast<std::uint64_t>(state.range(0));
  const OmegaGrid g = make_omega_grid(f, K, 2);
  const auto x = random_inputs(f, K, 1, rng);
  const NetParams np = params_for(K, 1, 65537);
  for (auto _ : state) {
    const auto prog = draw_and_loose_program(f, g, 1, false);
    benchmark::DoNotOptimize(run(*prog, np, x));
  }
  state.counters["C2"] = static_cast<double>(predicted_cost_structured(g, 1, np).C2);
}
BENCHMARK(BM_DrawAndLoose)->Arg(48)->Arg(192)->Arg(768)->Unit(benchmark::kMillisecond);

void BM_FrameworkEncode(benchmark::State& state) {
  const FieldCtx f(65537);
  std::mt19937_64 rng(7);
  const auto K = static_cast<std::size_t>(state.range(0));
  const auto R = static_cast<std::size_t>(state.range(1));
  EncodingScenario s = grs_scenario(f, K, R, true, 1, rng);
  if (state.range(2) == 0) s.algorithm = Algorithm::Universal;
  auto x = random_inputs(f, K, 1, rng);
  x.resize(s.N());  // sinks start empty
  for (auto _ : state) {
    const auto prog = encode_program(s);
    benchmark::DoNotOptimize(run(*prog, s.params(), x));
  }
  state.SetLabel(algorithm_name(s.algorithm));
}
BENCHMARK(BM_FrameworkEncode)
    ->Args({64, 16, 0})
    ->Args({64, 16, 1})
    ->Args({16, 64, 0})
    ->Args({16, 64, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
