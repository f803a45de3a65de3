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

#include "decenc/framework.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "decenc/intmath.hpp"
#include "decenc/universal.hpp"

namespace decenc {

const char* algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Universal: return "universal";
    case Algorithm::Structured: return "structured";
    case Algorithm::Cauchy: return "cauchy";
  }
  return "?";
}

const char* layout_name(LayoutCase c) noexcept {
  switch (c) {
    case LayoutCase::Stacked: return "stacked";
    case LayoutCase::Concatenated: return "concatenated";
    case LayoutCase::NonSystematicSingle: return "nonsystematic-single";
    case LayoutCase::NonSystematicColumns: return "nonsystematic-columns";
  }
  return "?";
}

NetParams EncodingScenario::params() const {
  NetParams np;
  np.N = N();
  np.p = p;
  np.alpha = alpha;
  np.beta = beta;
  np.q = ctx.q();
  np.W = W;
  return np;
}

void validate(const EncodingScenario& s) {
  if (s.K == 0 || s.R == 0) throw Error(Errc::BadShape, "K and R must be positive");
  validate(s.params());
  const std::size_t cols = s.systematic ? s.R : s.N();
  if (s.matrix.rows() != s.K || s.matrix.cols() != cols) {
    throw Error(Errc::ShapeMismatch, "coding matrix must be " + std::to_string(s.K) + " x " + std::to_string(cols));
  }
  switch (s.family) {
    case CodeFamily::Explicit:
      break;
    case CodeFamily::GrsSystematic:
      if (!s.systematic || s.alphas.size() != s.K || s.betas.size() != s.R || s.u.size() != s.K ||
          s.v.size() != s.R) {
        throw Error(Errc::ShapeMismatch, "systematic GRS parameters");
      }
      break;
    case CodeFamily::GrsNonSystematic:
      if (s.systematic || s.alphas.size() != s.K || s.betas.size() != s.R || s.u.size() != s.K ||
          s.v.size() != s.R) {
        throw Error(Errc::ShapeMismatch, "non-systematic GRS parameters");
      }
      break;
    case CodeFamily::Lagrange:
      if (s.systematic || s.alphas.size() != s.K || s.betas.size() != s.N() || s.u.size() != s.K ||
          s.v.size() != s.N()) {
        throw Error(Errc::ShapeMismatch, "Lagrange parameters");
      }
      break;
  }
  const bool cauchy_ok = s.family == CodeFamily::GrsSystematic || s.family == CodeFamily::Lagrange;
  if ((s.algorithm == Algorithm::Cauchy && !cauchy_ok) ||
      (s.algorithm == Algorithm::Structured && s.family != CodeFamily::GrsNonSystematic)) {
    throw Error(Errc::BadShape, std::string("algorithm ") + algorithm_name(s.algorithm) +
                                    " does not apply to this code family");
  }
  if (s.algorithm != Algorithm::Universal && s.design.size() != plan_layout(s).cols) {
    throw Error(Errc::ShapeMismatch, "one point design entry per grid column");
  }
}

GridLayout plan_layout(std::size_t K, std::size_t R, bool systematic) {
  if (K == 0 || R == 0) throw Error(Errc::ShapeMismatch, "K and R must be positive");
  GridLayout L;
  if (systematic && K >= R) {
    L.kind = LayoutCase::Stacked;
    L.rows = R;
    L.cols = ceil_div(K, R);
    L.columns.resize(L.cols);
    std::vector<bool> borrowed(R, false);
    for (std::size_t m = 0; m < L.cols; ++m) {
      for (std::size_t r = 0; r < R; ++r) {
        const std::size_t k = r + m * R;
        if (k < K) {
          L.columns[m].push_back({k, static_cast<std::int64_t>(k), static_cast<std::int64_t>(r)});
        } else {
          L.columns[m].push_back({K + r, -1, static_cast<std::int64_t>(r)});
          L.borrowed.push_back(K + r);
          borrowed[r] = true;
        }
      }
    }
    for (std::size_t r = 0; r < R; ++r) {
      GroupSpec g;
      g.root = K + r;
      for (std::size_t m = 0; m < L.cols; ++m) g.members.push_back(L.columns[m][r].proc);
      if (!borrowed[r]) g.members.push_back(K + r);
      L.trees.push_back(std::move(g));
    }
  } else if (systematic) {
    L.kind = LayoutCase::Concatenated;
    L.rows = K;
    L.cols = ceil_div(R, K);
    L.columns.resize(L.cols);
    L.trees.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
      L.trees[k].root = k;
      L.trees[k].members.push_back(k);
    }
    for (std::size_t m = 0; m < L.cols; ++m) {
      for (std::size_t k = 0; k < K; ++k) {
        const std::size_t t = k + m * K;
        if (t < R) {
          L.columns[m].push_back({K + t, static_cast<std::int64_t>(k), static_cast<std::int64_t>(t)});
          L.trees[k].members.push_back(K + t);
        } else {
          L.columns[m].push_back({k, static_cast<std::int64_t>(k), -1});
          L.borrowed.push_back(k);
        }
      }
    }
  } else if (K > R) {
    L.kind = LayoutCase::NonSystematicSingle;
    L.rows = K + R;
    L.cols = 1;
    L.columns.resize(1);
    for (std::size_t i = 0; i < K + R; ++i) {
      L.columns[0].push_back({i, i < K ? static_cast<std::int64_t>(i) : -1, static_cast<std::int64_t>(i)});
    }
  } else {
    L.kind = LayoutCase::NonSystematicColumns;
    const std::size_t C = 1 + R / K, left = R % K;
    L.cols = C;
    L.rows = K + ceil_div(left, C);
    L.columns.resize(C);
    L.trees.resize(K);
    for (std::size_t c = 0; c < C; ++c) {
      for (std::size_t j = 0; j < K; ++j) {
        const std::size_t proc = c * K + j;
        L.columns[c].push_back({proc, static_cast<std::int64_t>(j), static_cast<std::int64_t>(proc)});
        L.trees[j].members.push_back(proc);
      }
    }
    for (std::size_t j = 0; j < K; ++j) L.trees[j].root = j;
    for (std::size_t t = 0; t < left; ++t) {
      const std::size_t proc = C * K + t;
      L.columns[t % C].push_back({proc, -1, static_cast<std::int64_t>(proc)});
    }
  }
  return L;
}

GridLayout plan_layout(const EncodingScenario& s) { return plan_layout(s.K, s.R, s.systematic); }

std::size_t Block::size() const {
  switch (kind) {
    case Kind::Dense: return dense.rows();
    case Kind::ScaledVandermonde: return points.size();
    case Kind::Cauchy: return cauchy.B;
  }
  return 0;
}

Mat block_matrix(const FieldCtx& ctx, const Block& block) {
  switch (block.kind) {
    case Block::Kind::Dense: return block.dense;
    case Block::Kind::ScaledVandermonde:
      return matmul(ctx, build_vandermonde(ctx, block.points, block.points.size()), diag(block.scale));
    case Block::Kind::Cauchy: return cauchy_block_matrix(ctx, block.cauchy);
  }
  return {};
}

Phase append_block(ScheduleBuilder& b, std::size_t round0, const Block& block, const std::vector<Proc>& members,
                   const std::vector<Slot>& in, std::size_t p) {
  if (members.size() != block.size() || in.size() != members.size()) {
    throw Error(Errc::ShapeMismatch, "block size differs from its column");
  }
  switch (block.kind) {
    case Block::Kind::Dense:
      return append_prepare_and_shoot(b, round0, members, in, coef_of(block.dense), p);
    case Block::Kind::ScaledVandermonde: {
      if (!block.grid) return append_prepare_and_shoot(b, round0, members, in, coef_of(block_matrix(b.ctx(), block)), p);
      Phase v = append_draw_and_loose(b, round0, *block.grid, members, in, p, false);
      Phase s = append_scale(b, round0 + v.rounds + 1, members, v.out, block.scale);
      s.rounds = v.rounds;
      return s;
    }
    case Block::Kind::Cauchy:
      return append_cauchy_block(b, round0, block.cauchy, members, in, p);
  }
  return {};
}

std::vector<std::size_t> block_profile(const Block& block, std::size_t p) {
  switch (block.kind) {
    case Block::Kind::Dense: return universal_profile(block.size(), p);
    case Block::Kind::ScaledVandermonde:
      return block.grid ? draw_and_loose_profile(*block.grid, p) : universal_profile(block.size(), p);
    case Block::Kind::Cauchy: return cauchy_block_profile(block.cauchy, p);
  }
  return {};
}

namespace {

template <class T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<Seat>& seats) {
  std::vector<T> out;
  for (const Seat& s : seats) out.push_back(v.at(static_cast<std::size_t>(s.output)));
  return out;
}

Elem output_point(const EncodingScenario& s, std::int64_t out, bool scale) {
  const auto i = static_cast<std::size_t>(out);
  if (i < s.K) return scale ? s.u[i] : s.alphas[i];
  return scale ? s.v[i - s.K] : s.betas[i - s.K];
}

}  // namespace

Block column_block(const EncodingScenario& s, const GridLayout& layout, std::size_t c) {
  const std::vector<Seat>& seats = layout.columns.at(c);
  const std::size_t B = seats.size();
  const FieldCtx& ctx = s.ctx;
  Block block;
  if (s.algorithm == Algorithm::Universal) {
    block.kind = Block::Kind::Dense;
    block.dense = Mat(B, B);
    std::mt19937_64 rng(s.padding_seed + c);
    for (std::size_t a = 0; a < B; ++a) {
      for (std::size_t o = 0; o < B; ++o) {
        const Elem pad = s.padding == Padding::Random ? random_elem(ctx, rng) : ctx.zero();
        const Seat &in = seats[a], &out = seats[o];
        block.dense(a, o) = (in.input >= 0 && out.output >= 0)
                                ? s.matrix(static_cast<std::size_t>(in.input), static_cast<std::size_t>(out.output))
                                : pad;
      }
    }
    return block;
  }
  const ColumnDesign& d = s.design.at(c);
  if (s.algorithm == Algorithm::Structured) {
    block.kind = Block::Kind::ScaledVandermonde;
    for (const Seat& seat : seats) {
      block.points.push_back(output_point(s, seat.output, false));
      block.scale.push_back(output_point(s, seat.output, true));
    }
    block.grid = d.a_grid;
    if (block.grid && block.grid->points() != block.points) throw Error(Errc::BadShape, "grid points differ");
    return block;
  }
  block.kind = Block::Kind::Cauchy;
  switch (layout.kind) {
    case LayoutCase::Stacked:
      block.cauchy = stacked_block(ctx, s.alphas, s.betas, s.u, s.v, c, d.dummies);
      break;
    case LayoutCase::Concatenated:
      block.cauchy = concatenated_block(ctx, s.alphas, s.betas, s.u, s.v, c, d.dummies);
      break;
    case LayoutCase::NonSystematicSingle:
    case LayoutCase::NonSystematicColumns:
      block.cauchy = stacked_block(ctx, s.alphas, pick(s.betas, seats), s.u, pick(s.v, seats), 0, d.dummies);
      break;
  }
  block.cauchy.a_grid = d.a_grid;
  block.cauchy.b_grid = d.b_grid;
  validate(ctx, block.cauchy);
  return block;
}

std::shared_ptr<const Schedule> encode_program(const EncodingScenario& s) {
  validate(s);
  const GridLayout L = plan_layout(s);
  ScheduleBuilder b(s.ctx, s.N(), s.W);
  std::vector<Slot> own(s.N());
  for (std::size_t k = 0; k < s.K; ++k) {
    own[k] = b.fresh(k);
    b.set_input(k, own[k]);
  }
  std::vector<bool> has(s.N(), false);
  for (std::size_t k = 0; k < s.K; ++k) has[k] = true;

  // Runs every column side by side from round0; leaves each seat's result in slot_of.
  std::vector<Slot> slot_of(s.N());
  auto columns = [&](std::size_t round0, const std::vector<Slot>& held, const std::vector<bool>& held_ok) {
    std::size_t rounds = 0;
    for (std::size_t c = 0; c < L.cols; ++c) {
      std::vector<Proc> members;
      std::vector<Slot> in;
      for (const Seat& seat : L.columns[c]) {
        members.push_back(seat.proc);
        in.push_back(held_ok[seat.proc] ? held[seat.proc] : b.fresh(seat.proc));
      }
      const Phase ph = append_block(b, round0, column_block(s, L, c), members, in, s.p);
      for (std::size_t i = 0; i < members.size(); ++i) slot_of[members[i]] = ph.out[i];
      rounds = std::max(rounds, ph.rounds);
    }
    b.reserve_rounds(round0 + rounds);
    return round0 + rounds;
  };
  // Row broadcasts from each source; every member ends holding x_root.
  auto broadcasts = [&](std::vector<Slot>& held, std::vector<bool>& held_ok) {
    std::size_t rounds = 0;
    for (const GroupSpec& g : L.trees) {
      std::vector<Slot> slots;
      for (Proc m : g.members) {
        if (m != g.root) {
          held[m] = b.fresh(m);
          held_ok[m] = true;
        }
        slots.push_back(held[m]);
      }
      rounds = std::max(rounds, append_broadcast(b, 0, g, slots, s.p));
    }
    b.reserve_rounds(rounds);
    return rounds;
  };

  switch (L.kind) {
    case LayoutCase::Stacked: {
      const std::size_t r1 = columns(0, own, has);
      std::vector<bool> in_column(s.N(), false);
      for (const auto& col : L.columns) {
        for (const Seat& seat : col) in_column[seat.proc] = true;
      }
      for (const GroupSpec& g : L.trees) {
        std::vector<Slot> slots;
        for (Proc m : g.members) slots.push_back(in_column[m] ? slot_of[m] : b.fresh(m));
        append_reduce(b, r1, g, slots, s.p);
        const auto at = std::find(g.members.begin(), g.members.end(), g.root) - g.members.begin();
        b.set_output(g.root, slots[static_cast<std::size_t>(at)]);
      }
      break;
    }
    case LayoutCase::Concatenated:
    case LayoutCase::NonSystematicColumns: {
      std::vector<Slot> held = own;
      std::vector<bool> held_ok = has;
      const std::size_t r1 = broadcasts(held, held_ok);
      columns(r1, held, held_ok);
      for (const auto& col : L.columns) {
        for (const Seat& seat : col) {
          if (seat.output >= 0) b.set_output(seat.proc, slot_of[seat.proc]);
        }
      }
      break;
    }
    case LayoutCase::NonSystematicSingle:
      columns(0, own, has);
      for (const Seat& seat : L.columns[0]) b.set_output(seat.proc, slot_of[seat.proc]);
      break;
  }
  return b.build();
}

FrameworkPrediction predicted_cost_framework(const EncodingScenario& s) {
  validate(s);
  const GridLayout L = plan_layout(s);
  std::vector<std::size_t> blocks;
  for (std::size_t c = 0; c < L.cols; ++c) blocks = parallel(blocks, block_profile(column_block(s, L, c), s.p));
  std::size_t largest = 0;
  for (const GroupSpec& g : L.trees) largest = std::max(largest, g.members.size());
  auto tree = [&](std::size_t n) { return std::vector<std::size_t>(n == 0 ? 0 : tree_rounds(n, s.p), 1); };

  std::vector<std::size_t> sched, formula;
  switch (L.kind) {
    case LayoutCase::Stacked:
      sched = sequence(blocks, tree(largest));
      formula = sequence(blocks, tree(ceil_div(s.K, s.R)));
      break;
    case LayoutCase::Concatenated:
      sched = sequence(tree(largest), blocks);
      formula = sequence(tree(ceil_div(s.R, s.K)), blocks);
      break;
    case LayoutCase::NonSystematicSingle:
      sched = formula = blocks;
      break;
    case LayoutCase::NonSystematicColumns:
      sched = sequence(tree(largest), blocks);
      formula = sequence(tree(ceil_div(s.R, s.K) + 1), blocks);
      break;
  }
  const NetParams np = s.params();
  return {predict(sched, np), predict(formula, np)};
}

std::vector<std::vector<Elem>> expected_outputs(const EncodingScenario& s, const std::vector<std::vector<Elem>>& x) {
  if (x.size() != s.K) throw Error(Errc::ShapeMismatch, "one input symbol per source");
  const FieldCtx& ctx = s.ctx;
  std::vector<std::vector<Elem>> out(s.N());
  const std::size_t first = s.systematic ? s.K : 0;
  for (std::size_t i = first; i < s.N(); ++i) {
    const std::size_t col = s.systematic ? i - s.K : i;
    out[i] = zero_packet(s.W);
    for (std::size_t k = 0; k < s.K; ++k) add_scaled(ctx, out[i], s.matrix(k, col), x[k]);
  }
  return out;
}

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

using Oracle = std::function<std::vector<Packet>(const std::vector<Packet>&)>;

VerifyReport verify_runs(const FieldCtx& ctx, const Program& program, const NetParams& np, std::size_t sources,
                         const Oracle& oracle, const Prediction& predicted, std::size_t trials, std::uint64_t seed,
                         std::ostream* trace) {
  std::mt19937_64 rng(seed);
  VerifyReport rep;
  rep.predicted = predicted;
  RunOptions opts;
  opts.abort_on_violation = false;
  opts.trace = trace;
  bool outputs_ok = true, ports_ok = true, bookkeeping_ok = true;
  std::string first_bad;
  const std::size_t runs = std::max<std::size_t>(trials, 1);
  for (std::size_t t = 0; t < runs; ++t) {
    std::vector<Packet> x(sources);
    for (auto& pkt : x) {
      pkt = zero_packet(np.W);
      if (trials > 0) {
        for (Elem& e : pkt) e = random_elem(ctx, rng);
      }
    }
    std::vector<std::vector<Elem>> inputs(program.processors());
    for (std::size_t k = 0; k < sources; ++k) inputs[k] = x[k];
    const RunReport run_rep = run(program, np, inputs, opts);
    if (!run_rep.violations.empty()) ports_ok = false;
    std::size_t sum = 0;
    for (std::size_t m : run_rep.mt) sum += m;
    if (sum != run_rep.C2 || run_rep.cost != cost_of(run_rep.C1, run_rep.C2, np)) bookkeeping_ok = false;
    if (trials > 0) {
      const auto want = oracle(x);
      for (std::size_t i = 0; i < want.size(); ++i) {
        if (want[i].empty()) continue;
        if (run_rep.outputs.at(i) != want[i]) {
          if (outputs_ok) first_bad = "trial " + std::to_string(t) + ", processor " + std::to_string(i);
          outputs_ok = false;
        }
      }
    }
    rep.C1 = run_rep.C1;
    rep.C2 = run_rep.C2;
    rep.cost = run_rep.cost;
  }
  if (trials > 0) rep.checks.push_back({"outputs", outputs_ok, first_bad});
  rep.checks.push_back({"ports", ports_ok, ""});
  rep.checks.push_back({"bookkeeping", bookkeeping_ok, ""});
  auto eq = [&](const char* name, std::size_t got, std::size_t want) {
    rep.checks.push_back({name, got == want, std::to_string(got) + " vs " + std::to_string(want)});
  };
  eq("C1", rep.C1, predicted.C1);
  eq("C2", rep.C2, predicted.C2);
  const double tol = 1e-9 * std::max(1.0, std::abs(predicted.cost));
  std::ostringstream os;
  os << rep.cost << " vs " << predicted.cost;
  rep.checks.push_back({"cost", std::abs(rep.cost - predicted.cost) <= tol, os.str()});
  return rep;
}

}  // namespace

VerifyReport verify_program(const EncodingScenario& s, const Program& program, const Prediction& predicted,
                            std::size_t trials, std::uint64_t seed, std::ostream* trace) {
  return verify_runs(
      s.ctx, program, s.params(), s.K, [&](const std::vector<Packet>& x) { return expected_outputs(s, x); }, predicted,
      trials, seed, trace);
}

VerifyReport verify_all_to_all(const FieldCtx& ctx, const Mat& C, const Program& program, const Prediction& predicted,
                               const NetParams& params, std::size_t trials, std::uint64_t seed,
                               std::ostream* trace) {
  if (!C.square() || C.rows() != program.processors()) throw Error(Errc::ShapeMismatch, "C must be K x K");
  auto oracle = [&](const std::vector<Packet>& x) {
    std::vector<Packet> out(C.cols(), zero_packet(params.W));
    for (std::size_t c = 0; c < C.cols(); ++c) {
      for (std::size_t r = 0; r < C.rows(); ++r) add_scaled(ctx, out[c], C(r, c), x[r]);
    }
    return out;
  };
  return verify_runs(ctx, program, params, C.rows(), oracle, predicted, trials, seed, trace);
}

VerifyReport verify_scenario(const EncodingScenario& s, std::size_t trials, std::uint64_t seed, std::ostream* trace) {
  const auto program = encode_program(s);
  return verify_program(s, *program, predicted_cost_framework(s).schedule, trials, seed, trace);
}

Elem random_elem(const FieldCtx& ctx, std::mt19937_64& rng) { return ctx.elem(rng() % ctx.q()); }

Elem random_nonzero(const FieldCtx& ctx, std::mt19937_64& rng) { return ctx.elem(1 + rng() % (ctx.q() - 1)); }

Mat random_mat(const FieldCtx& ctx, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Mat A(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) A(i, j) = random_elem(ctx, rng);
  }
  return A;
}

namespace {

EncodingScenario base(const FieldCtx& ctx, std::size_t K, std::size_t R, std::size_t p) {
  EncodingScenario s;
  s.ctx = ctx;
  s.K = K;
  s.R = R;
  s.p = p;
  return s;
}

}  // namespace

EncodingScenario random_scenario(const FieldCtx& ctx, std::size_t K, std::size_t R, bool systematic, std::size_t p,
                                 std::mt19937_64& rng) {
  EncodingScenario s = base(ctx, K, R, p);
  s.systematic = systematic;
  s.matrix = random_mat(ctx, K, systematic ? R : K + R, rng);
  return s;
}

EncodingScenario grs_scenario(const FieldCtx& ctx, std::size_t K, std::size_t R, bool systematic, std::size_t p,
                              std::mt19937_64& rng) {
  EncodingScenario s = base(ctx, K, R, p);
  s.systematic = systematic;
  s.family = systematic ? CodeFamily::GrsSystematic : CodeFamily::GrsNonSystematic;
  PointDesign d = design_points(ctx, K, R, s.family, p);
  s.alphas = std::move(d.alphas);
  s.betas = std::move(d.betas);
  s.design = std::move(d.columns);
  for (std::size_t k = 0; k < K; ++k) s.u.push_back(random_nonzero(ctx, rng));
  for (std::size_t r = 0; r < R; ++r) s.v.push_back(random_nonzero(ctx, rng));
  if (systematic) {
    s.matrix = systematic_grs_A(ctx, s.alphas, s.betas, s.u, s.v);
    s.algorithm = Algorithm::Cauchy;
  } else {
    std::vector<Elem> pts = s.alphas, scale = s.u;
    pts.insert(pts.end(), s.betas.begin(), s.betas.end());
    scale.insert(scale.end(), s.v.begin(), s.v.end());
    s.matrix = matmul(ctx, build_vandermonde(ctx, pts, K), diag(scale));
    s.algorithm = Algorithm::Structured;
  }
  return s;
}

EncodingScenario lagrange_scenario(const FieldCtx& ctx, std::size_t K, std::size_t R, std::size_t p,
                                   std::mt19937_64& rng) {
  (void)rng;
  EncodingScenario s = base(ctx, K, R, p);
  s.systematic = false;
  s.family = CodeFamily::Lagrange;
  PointDesign d = design_points(ctx, K, R, s.family, p);
  s.alphas = std::move(d.alphas);
  s.betas = std::move(d.betas);
  s.design = std::move(d.columns);
  s.u.assign(K, ctx.one());
  s.v.assign(K + R, ctx.one());
  s.matrix = systematic_grs_A(ctx, s.alphas, s.betas, s.u, s.v);
  s.algorithm = Algorithm::Cauchy;
  return s;
}

std::pair<std::uint64_t, unsigned> choose_radix(const FieldCtx& ctx, const std::vector<std::size_t>& sizes,
                                                std::size_t p) {
  std::uint64_t g = ctx.q() - 1;
  for (std::size_t n : sizes) g = std::gcd<std::uint64_t>(g, n);
  auto depth = [&](std::uint64_t P) {
    unsigned H = 0;
    while (g % ipow(P, H + 1) == 0) ++H;
    return H;
  };
  if (p + 1 >= 2 && depth(p + 1) >= 1) return {p + 1, depth(p + 1)};
  std::pair<std::uint64_t, unsigned> best{2, 0};
  std::uint64_t best_z = 1;
  for (std::uint64_t P = 2; P <= 8; ++P) {
    const unsigned H = depth(P);
    if (H >= 1 && ipow(P, H) > best_z) {
      best = {P, H};
      best_z = ipow(P, H);
    }
  }
  return best;
}

CosetPool::CosetPool(const FieldCtx& ctx, std::uint64_t P, unsigned H) : ctx_(ctx), P_(P), H_(H), Z_(ipow(P, H)) {
  if ((ctx.q() - 1) % Z_ != 0) throw Error(Errc::OrderNotDividing, "P^H must divide q - 1");
}

OmegaGrid CosetPool::take(std::size_t n, const std::vector<std::uint64_t>& shared) {
  if (n % Z_ != 0 || shared.size() * Z_ > n) throw Error(Errc::BadShape, "grid size must be a multiple of Z");
  const std::uint64_t range = (ctx_.q() - 1) / Z_;
  const std::uint64_t fresh = n / Z_ - shared.size();
  if (next_ + fresh > range) {
    throw Error(Errc::FieldTooSmall, "GF(" + std::to_string(ctx_.q()) + ") has too few cosets for the point design");
  }
  std::vector<std::uint64_t> phi = shared;
  for (std::uint64_t i = 0; i < fresh; ++i) phi.push_back(next_++);
  return OmegaGrid::build(ctx_, n, P_, H_, std::move(phi));
}

namespace {

PointDesign design_with(const FieldCtx& ctx, std::size_t K, std::size_t R, CodeFamily family, const GridLayout& L,
                        std::uint64_t P, unsigned H) {
  CosetPool pool(ctx, P, H);
  PointDesign d;
  d.columns.resize(L.cols);
  auto head = [](const std::vector<Elem>& v, std::size_t n) { return std::vector<Elem>(v.begin(), v.begin() + n); };
  auto tail = [](const std::vector<Elem>& v, std::size_t n) { return std::vector<Elem>(v.begin() + n, v.end()); };
  switch (family) {
    case CodeFamily::Explicit:
      break;
    case CodeFamily::GrsSystematic:
      if (L.kind == LayoutCase::Stacked) {
        const OmegaGrid bg = pool.take(R);
        d.betas = bg.points();
        for (std::size_t m = 0; m < L.cols; ++m) {
          const OmegaGrid ag = pool.take(R);
          const std::size_t real = std::min(R, K - m * R);
          const auto pts = ag.points();
          const auto h = head(pts, real);
          d.alphas.insert(d.alphas.end(), h.begin(), h.end());
          d.columns[m] = {tail(pts, real), ag, bg};
        }
      } else {
        const OmegaGrid ag = pool.take(K);
        d.alphas = ag.points();
        for (std::size_t m = 0; m < L.cols; ++m) {
          const OmegaGrid bg = pool.take(K);
          const std::size_t real = std::min(K, R - m * K);
          const auto pts = bg.points();
          const auto h = head(pts, real);
          d.betas.insert(d.betas.end(), h.begin(), h.end());
          d.columns[m] = {tail(pts, real), ag, bg};
        }
      }
      break;
    case CodeFamily::Lagrange: {
      d.betas.resize(K + R);
      std::vector<std::uint64_t> alpha_rows;
      for (std::size_t c = 0; c < L.cols; ++c) {
        const std::size_t n = L.columns[c].size();
        const OmegaGrid ag = pool.take(n, alpha_rows);
        if (alpha_rows.empty()) {
          alpha_rows.assign(ag.phi.begin(), ag.phi.begin() + static_cast<std::ptrdiff_t>(K / pool.Z()));
          d.alphas = head(ag.points(), K);
        }
        const OmegaGrid bg = pool.take(n);
        const auto bp = bg.points();
        for (std::size_t i = 0; i < n; ++i) d.betas[static_cast<std::size_t>(L.columns[c][i].output)] = bp[i];
        d.columns[c] = {tail(ag.points(), K), ag, bg};
      }
      break;
    }
    case CodeFamily::GrsNonSystematic:
      d.alphas.resize(K);
      d.betas.resize(R);
      for (std::size_t c = 0; c < L.cols; ++c) {
        const OmegaGrid g = pool.take(L.columns[c].size());
        const auto pts = g.points();
        for (std::size_t i = 0; i < pts.size(); ++i) {
          const auto out = static_cast<std::size_t>(L.columns[c][i].output);
          (out < K ? d.alphas[out] : d.betas[out - K]) = pts[i];
        }
        d.columns[c] = {{}, g, std::nullopt};
      }
      break;
  }
  if (H == 0) {
    for (ColumnDesign& c : d.columns) {
      c.a_grid.reset();
      c.b_grid.reset();
    }
  }
  return d;
}

}  // namespace

PointDesign design_points(const FieldCtx& ctx, std::size_t K, std::size_t R, CodeFamily family, std::size_t p) {
  if (family == CodeFamily::Explicit) throw Error(Errc::BadShape, "explicit codes carry no points");
  const GridLayout L = plan_layout(K, R, family == CodeFamily::GrsSystematic);
  std::vector<std::size_t> sizes;
  for (const auto& col : L.columns) sizes.push_back(col.size());
  if (family == CodeFamily::Lagrange) sizes.push_back(K);
  const auto [P, H] = choose_radix(ctx, sizes, p);
  if (H > 0) {
    try {
      return design_with(ctx, K, R, family, L, P, H);
    } catch (const Error& e) {
      if (e.code() != Errc::FieldTooSmall) throw;
    }
  }
  return design_with(ctx, K, R, family, L, 2, 0);
}

}  // namespace decenc
