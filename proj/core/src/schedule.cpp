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

#include "decenc/schedule.hpp"

#include <string>
#include <utility>

namespace decenc {

namespace {

struct SlotState final : ProcState {
  Store store;
};

}  // namespace

ScheduleBuilder::ScheduleBuilder(const FieldCtx& ctx, std::size_t N, std::size_t W)
    : ctx_(ctx), W_(W), slots_(N, 0), input_(N, -1), output_(N, -1) {
  if (N == 0 || W == 0) throw Error(Errc::BadShape, "schedule needs N >= 1 and W >= 1");
}

Slot ScheduleBuilder::fresh(Proc k) {
  if (k >= slots_.size()) throw Error(Errc::OutOfRange, "processor " + std::to_string(k));
  return slots_[k]++;
}

void ScheduleBuilder::send(std::size_t round, Proc src, Proc dst, std::vector<Slot> src_slots,
                           std::vector<Slot> dst_slots, Merge merge) {
  if (round == 0) throw Error(Errc::OutOfRange, "rounds start at 1");
  if (src >= slots_.size() || dst >= slots_.size()) throw Error(Errc::OutOfRange, "send endpoint");
  if (src_slots.size() != dst_slots.size() || src_slots.empty()) {
    throw Error(Errc::ShapeMismatch, "send slot lists must be nonempty and equally long");
  }
  if (sends_.size() < round) sends_.resize(round);
  reserve_rounds(round);
  sends_[round - 1].push_back(SendSpec{src, dst, std::move(src_slots), std::move(dst_slots), merge});
}

void ScheduleBuilder::local(std::size_t stage, Proc k, LocalOp op) {
  if (stage == 0) throw Error(Errc::OutOfRange, "stages start at 1");
  if (k >= slots_.size()) throw Error(Errc::OutOfRange, "processor " + std::to_string(k));
  locals_.push_back(LocalSpec{stage, k, std::move(op)});
}

void ScheduleBuilder::set_input(Proc k, Slot s) { input_.at(k) = s; }
void ScheduleBuilder::set_output(Proc k, Slot s) { output_.at(k) = s; }
void ScheduleBuilder::reserve_rounds(std::size_t rounds) { rounds_ = std::max(rounds_, rounds); }

std::shared_ptr<const Schedule> ScheduleBuilder::build() const {
  return std::shared_ptr<const Schedule>(new Schedule(*this));
}

Schedule::Schedule(const ScheduleBuilder& b)
    : ctx_(b.ctx_), W_(b.W_), rounds_(b.rounds_), slots_(b.slots_), input_(b.input_), output_(b.output_),
      sends_(b.sends_) {
  const std::size_t N = slots_.size();
  sends_.resize(rounds_);
  out_.assign(rounds_, std::vector<std::vector<std::uint32_t>>(N));
  in_.assign(rounds_, std::vector<std::vector<std::uint32_t>>(N));
  for (std::size_t r = 0; r < rounds_; ++r) {
    // Delivery order per destination is ascending source, then emission order.
    std::vector<std::vector<std::uint32_t>> by_src(N);
    for (std::uint32_t i = 0; i < sends_[r].size(); ++i) by_src[sends_[r][i].src].push_back(i);
    for (Proc s = 0; s < N; ++s) {
      out_[r][s] = by_src[s];
      for (std::uint32_t i : by_src[s]) in_[r][sends_[r][i].dst].push_back(i);
    }
  }
  locals_.assign(rounds_ + 1, std::vector<std::vector<LocalOp>>(N));
  for (const auto& l : b.locals_) {
    if (l.stage > rounds_ + 1) throw Error(Errc::OutOfRange, "local op stage past the last round");
    locals_[l.stage - 1][l.proc].push_back(l.op);
  }
}

CoefFn coef_of(Mat A) {
  auto shared = std::make_shared<const Mat>(std::move(A));
  return [shared](std::size_t r, std::size_t c) { return (*shared)(r, c); };
}

Phase append_scale(ScheduleBuilder& b, std::size_t stage, const std::vector<Proc>& members,
                   const std::vector<Slot>& in, const std::vector<Elem>& c) {
  if (in.size() != members.size() || c.size() != members.size()) throw Error(Errc::ShapeMismatch, "scale lengths");
  Phase ph;
  ph.out.resize(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Slot src = in[k], dst = b.fresh(members[k]);
    const Elem ck = c[k];
    b.local(stage, members[k], [src, dst, ck](const FieldCtx& f, Store& st) { st[dst] = scaled(f, ck, st[src]); });
    ph.out[k] = dst;
  }
  return ph;
}

std::unique_ptr<ProcState> Schedule::init(Proc k, const std::vector<Elem>& input) const {
  auto st = std::make_unique<SlotState>();
  st->store.assign(slots_[k], zero_packet(W_));
  if (input_[k] >= 0) st->store[static_cast<Slot>(input_[k])] = input;
  return st;
}

void Schedule::deliver(std::size_t round, Proc k, Store& store, const std::vector<Message>& inbox) const {
  const auto& expected = in_[round - 1][k];
  if (expected.size() != inbox.size()) throw Error(Errc::ShapeMismatch, "unexpected inbox size at " + std::to_string(k));
  for (std::size_t i = 0; i < inbox.size(); ++i) {
    const SendSpec& spec = sends_[round - 1][expected[i]];
    const Message& msg = inbox[i];
    if (msg.src != spec.src || msg.payload.size() != spec.dst_slots.size() * W_) {
      throw Error(Errc::ShapeMismatch, "inbox does not match the schedule at " + std::to_string(k));
    }
    for (std::size_t j = 0; j < spec.dst_slots.size(); ++j) {
      Packet& cell = store[spec.dst_slots[j]];
      const Elem* in = msg.payload.data() + j * W_;
      if (spec.merge == Merge::Assign) {
        std::copy(in, in + W_, cell.begin());
      } else {
        for (std::size_t w = 0; w < W_; ++w) cell[w] = ctx_.add(cell[w], in[w]);
      }
    }
  }
}

void Schedule::run_locals(std::size_t stage, Proc k, Store& store) const {
  for (const auto& op : locals_[stage - 1][k]) op(ctx_, store);
}

std::vector<Message> Schedule::step(std::size_t round, Proc k, ProcState& state,
                                    const std::vector<Message>& inbox) const {
  Store& store = static_cast<SlotState&>(state).store;
  if (round > 1) deliver(round - 1, k, store, inbox);
  run_locals(round, k, store);
  std::vector<Message> out;
  out.reserve(out_[round - 1][k].size());
  for (std::uint32_t i : out_[round - 1][k]) {
    const SendSpec& spec = sends_[round - 1][i];
    Message msg;
    msg.src = k;
    msg.dst = spec.dst;
    msg.round = round;
    msg.payload.reserve(spec.src_slots.size() * W_);
    for (Slot s : spec.src_slots) msg.payload.insert(msg.payload.end(), store[s].begin(), store[s].end());
    out.push_back(std::move(msg));
  }
  return out;
}

std::vector<Elem> Schedule::finalize(Proc k, ProcState& state, const std::vector<Message>& inbox) const {
  Store& store = static_cast<SlotState&>(state).store;
  if (rounds_ > 0) deliver(rounds_, k, store, inbox);
  run_locals(rounds_ + 1, k, store);
  if (output_[k] < 0) return {};
  return store[static_cast<Slot>(output_[k])];
}

}  // namespace decenc
