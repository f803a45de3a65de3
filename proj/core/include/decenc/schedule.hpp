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
#include <functional>
#include <memory>
#include <vector>

#include "decenc/field.hpp"
#include "decenc/matrix.hpp"
#include "decenc/netsim.hpp"

namespace decenc {

/// Index of a symbol-sized cell in one processor's local memory.
using Slot = std::uint32_t;
using Store = std::vector<Packet>;
using LocalOp = std::function<void(const FieldCtx&, Store&)>;

enum class Merge { Assign, Add };

/// Where a composed phase left its per-member results, and how many rounds it took.
struct Phase {
  std::vector<Slot> out;
  std::size_t rounds = 0;
};

/// Coefficient (r, c) of a coding matrix, evaluated lazily by local ops.
using CoefFn = std::function<Elem(std::size_t r, std::size_t c)>;

/// A static program: every send and every local computation is fixed when the
/// program is built. Stage s local ops run after round s-1 is delivered and
/// before round s sends; stage rounds()+1 runs at finalize.
class Schedule;

class ScheduleBuilder {
 public:
  ScheduleBuilder(const FieldCtx& ctx, std::size_t N, std::size_t W);

  const FieldCtx& ctx() const noexcept { return ctx_; }
  std::size_t processors() const noexcept { return slots_.size(); }
  std::size_t width() const noexcept { return W_; }

  /// A zero-initialised slot on processor k.
  Slot fresh(Proc k);

  /// Ships src_slots of src to dst, where each lands in the matching dst_slots entry.
  void send(std::size_t round, Proc src, Proc dst, std::vector<Slot> src_slots, std::vector<Slot> dst_slots,
            Merge merge);
  void local(std::size_t stage, Proc k, LocalOp op);
  void set_input(Proc k, Slot s);
  void set_output(Proc k, Slot s);
  /// Declared round count only grows; phases that finish early leave idle rounds.
  void reserve_rounds(std::size_t rounds);
  std::size_t rounds() const noexcept { return rounds_; }

  std::shared_ptr<const Schedule> build() const;

 private:
  friend class Schedule;
  struct SendSpec {
    Proc src;
    Proc dst;
    std::vector<Slot> src_slots;
    std::vector<Slot> dst_slots;
    Merge merge;
  };
  struct LocalSpec {
    std::size_t stage;
    Proc proc;
    LocalOp op;
  };

  const FieldCtx& ctx_;
  std::size_t W_;
  std::size_t rounds_ = 0;
  std::vector<Slot> slots_;
  std::vector<std::int64_t> input_, output_;
  std::vector<std::vector<SendSpec>> sends_;  // by round - 1
  std::vector<LocalSpec> locals_;
};

/// Coefficients of a matrix shared by every local op that reads it.
CoefFn coef_of(Mat A);

/// members[k] gets c[k] times in[k] in a fresh slot at the given stage.
Phase append_scale(ScheduleBuilder& b, std::size_t stage, const std::vector<Proc>& members,
                   const std::vector<Slot>& in, const std::vector<Elem>& c);

class Schedule final : public Program {
 public:
  std::size_t processors() const override { return slots_.size(); }
  std::size_t rounds() const override { return rounds_; }
  std::size_t width() const override { return W_; }
  const FieldCtx& ctx() const noexcept { return ctx_; }

  std::unique_ptr<ProcState> init(Proc k, const std::vector<Elem>& input) const override;
  std::vector<Message> step(std::size_t round, Proc k, ProcState& state,
                            const std::vector<Message>& inbox) const override;
  std::vector<Elem> finalize(Proc k, ProcState& state, const std::vector<Message>& inbox) const override;

 private:
  friend class ScheduleBuilder;
  using SendSpec = ScheduleBuilder::SendSpec;

  explicit Schedule(const ScheduleBuilder& b);
  void deliver(std::size_t round, Proc k, Store& store, const std::vector<Message>& inbox) const;
  void run_locals(std::size_t stage, Proc k, Store& store) const;

  FieldCtx ctx_;
  std::size_t W_;
  std::size_t rounds_;
  std::vector<Slot> slots_;
  std::vector<std::int64_t> input_, output_;
  std::vector<std::vector<SendSpec>> sends_;
  // [round-1][proc] -> indices into sends_[round-1], in delivery order.
  std::vector<std::vector<std::vector<std::uint32_t>>> out_, in_;
  // [stage-1][proc] -> local ops.
  std::vector<std::vector<std::vector<LocalOp>>> locals_;
};

}  // namespace decenc
