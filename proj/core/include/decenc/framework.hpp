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
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "decenc/cauchy.hpp"
#include "decenc/collectives.hpp"
#include "decenc/matrix.hpp"
#include "decenc/netsim.hpp"
#include "decenc/schedule.hpp"
#include "decenc/structured.hpp"

namespace decenc {

enum class CodeFamily { Explicit, GrsSystematic, GrsNonSystematic, Lagrange };
enum class Algorithm { Universal, Structured, Cauchy };
/// How the filler rows/columns of dense blocks are chosen. Structured and
/// Cauchy blocks always use their own natural extension instead.
enum class Padding { Zero, Random };

const char* algorithm_name(Algorithm a) noexcept;

/// Extra points and grids chosen for the code-specific algorithms, one entry per grid column.
struct ColumnDesign {
  std::vector<Elem> dummies;
  std::optional<OmegaGrid> a_grid;
  std::optional<OmegaGrid> b_grid;
};

struct EncodingScenario {
  FieldCtx ctx{13};
  std::size_t K = 1;
  std::size_t R = 1;
  std::size_t W = 1;
  std::size_t p = 1;
  double alpha = 1.0;
  double beta = 1.0;
  bool systematic = true;
  CodeFamily family = CodeFamily::Explicit;
  /// A (K x R) when systematic, G (K x (K+R)) otherwise. Always filled; it is the oracle.
  Mat matrix;
  std::vector<Elem> alphas, betas, u, v;
  std::vector<ColumnDesign> design;
  Algorithm algorithm = Algorithm::Universal;
  Padding padding = Padding::Zero;
  std::uint64_t padding_seed = 0;

  std::size_t N() const noexcept { return K + R; }
  NetParams params() const;
};

/// Throws Error(ShapeMismatch) or Error(BadShape) on inconsistent fields.
void validate(const EncodingScenario& s);

enum class LayoutCase { Stacked, Concatenated, NonSystematicSingle, NonSystematicColumns };
const char* layout_name(LayoutCase c) noexcept;

/// One seat in an all-to-all column: which physical processor sits there,
/// which source symbol it holds (-1: zero), and which code column its block
/// output stands for (-1: discarded).
struct Seat {
  Proc proc = 0;
  std::int64_t input = -1;
  std::int64_t output = -1;
};

/// Physical ids: sources S_k = k, sinks T_r = K + r.
struct GridLayout {
  LayoutCase kind = LayoutCase::Stacked;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Seat>> columns;
  /// Row reduces (stacked) or row broadcasts (the other two-phase cases).
  std::vector<GroupSpec> trees;
  std::vector<Proc> borrowed;
};

GridLayout plan_layout(std::size_t K, std::size_t R, bool systematic);
GridLayout plan_layout(const EncodingScenario& s);

/// A square block of one column: dense, scaled Vandermonde V(points) diag(scale), or Cauchy-like.
struct Block {
  enum class Kind { Dense, ScaledVandermonde, Cauchy };
  Kind kind = Kind::Dense;
  Mat dense;
  std::vector<Elem> points;
  std::vector<Elem> scale;
  std::optional<OmegaGrid> grid;
  CauchyBlockSpec cauchy;

  std::size_t size() const;
};

Mat block_matrix(const FieldCtx& ctx, const Block& block);
Phase append_block(ScheduleBuilder& b, std::size_t round0, const Block& block, const std::vector<Proc>& members,
                   const std::vector<Slot>& in, std::size_t p);
std::vector<std::size_t> block_profile(const Block& block, std::size_t p);

/// The block that column `c` of the layout runs under the scenario's algorithm.
Block column_block(const EncodingScenario& s, const GridLayout& layout, std::size_t c);

std::shared_ptr<const Schedule> encode_program(const EncodingScenario& s);

struct FrameworkPrediction {
  /// With the group sizes the schedule actually uses; matches measurement.
  Prediction schedule;
  /// With the broadcast/reduce argument written as ceil(K/R), ceil(R/K) or ceil(R/K)+1.
  Prediction formula;
};
FrameworkPrediction predicted_cost_framework(const EncodingScenario& s);

/// Coded symbol each processor must end with for input x (K symbols): empty
/// for systematic sources.
std::vector<std::vector<Elem>> expected_outputs(const EncodingScenario& s, const std::vector<std::vector<Elem>>& x);

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  std::size_t C1 = 0;
  std::size_t C2 = 0;
  double cost = 0.0;
  Prediction predicted;
  bool pass() const;
};

/// Runs `trials` random inputs through the scenario's own program and checks
/// outputs against the oracle, and measured cost against the prediction.
/// trials = 0 does a single all-zero run for the cost checks only. `trace`
/// receives the simulator's message dump.
VerifyReport verify_scenario(const EncodingScenario& s, std::size_t trials, std::uint64_t seed,
                             std::ostream* trace = nullptr);
/// Same, for a caller-supplied program (used for negative controls).
VerifyReport verify_program(const EncodingScenario& s, const Program& program, const Prediction& predicted,
                            std::size_t trials, std::uint64_t seed, std::ostream* trace = nullptr);

/// All-to-all encode check: processor k holds x_k and must end with (x C)_k.
VerifyReport verify_all_to_all(const FieldCtx& ctx, const Mat& C, const Program& program, const Prediction& predicted,
                               const NetParams& params, std::size_t trials, std::uint64_t seed,
                               std::ostream* trace = nullptr);

/// Uniform element and uniform nonzero element from raw 64-bit draws.
Elem random_elem(const FieldCtx& ctx, std::mt19937_64& rng);
Elem random_nonzero(const FieldCtx& ctx, std::mt19937_64& rng);
Mat random_mat(const FieldCtx& ctx, std::size_t rows, std::size_t cols, std::mt19937_64& rng);

/// Scenario builders. Points for the GRS and Lagrange families come from the
/// point designer; u and v are random nonzero (GRS) or all ones (Lagrange).
EncodingScenario random_scenario(const FieldCtx& ctx, std::size_t K, std::size_t R, bool systematic, std::size_t p,
                                 std::mt19937_64& rng);
EncodingScenario grs_scenario(const FieldCtx& ctx, std::size_t K, std::size_t R, bool systematic, std::size_t p,
                              std::mt19937_64& rng);
EncodingScenario lagrange_scenario(const FieldCtx& ctx, std::size_t K, std::size_t R, std::size_t p,
                                   std::mt19937_64& rng);

/// Grid radix and depth for a set of grid sizes: P = p+1 when it gives H >= 1,
/// else the P <= 8 with the largest Z, else (2, 0).
std::pair<std::uint64_t, unsigned> choose_radix(const FieldCtx& ctx, const std::vector<std::size_t>& sizes,
                                                std::size_t p);

/// Disjoint cosets of the order-Z subgroup, handed out in phi order.
class CosetPool {
 public:
  CosetPool(const FieldCtx& ctx, std::uint64_t P, unsigned H);
  /// A grid of n points (Z | n) whose leading rows repeat `shared`.
  /// Throws Error(FieldTooSmall) when cosets run out.
  OmegaGrid take(std::size_t n, const std::vector<std::uint64_t>& shared = {});
  std::uint64_t Z() const noexcept { return Z_; }

 private:
  const FieldCtx& ctx_;
  std::uint64_t P_;
  unsigned H_;
  std::uint64_t Z_;
  std::uint64_t next_ = 0;
};

struct PointDesign {
  std::vector<Elem> alphas;
  std::vector<Elem> betas;
  std::vector<ColumnDesign> columns;
};

/// Evaluation points (and dummies completing short blocks) laid out so that
/// every Vandermonde stage of every column is an omega-grid in seat order.
PointDesign design_points(const FieldCtx& ctx, std::size_t K, std::size_t R, CodeFamily family, std::size_t p);

}  // namespace decenc
