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

#include "decenc/collectives.hpp"

#include <algorithm>
#include <string>

#include "decenc/intmath.hpp"

namespace decenc {

namespace {

struct TreeEdge {
  std::size_t round;  // 1-based within the tree
  std::size_t parent;
  std::size_t child;  // positions in the root-first member order
};

// Round-by-round splitting: every holder of a contiguous range keeps the
// first chunk and hands each of the other p chunks to that chunk's first member.
std::vector<TreeEdge> tree_edges(std::size_t n, std::size_t p) {
  struct Range {
    std::size_t begin, size;
  };
  std::vector<TreeEdge> edges;
  std::vector<Range> live = {{0, n}};
  for (std::size_t t = 1; std::any_of(live.begin(), live.end(), [](const Range& r) { return r.size > 1; }); ++t) {
    std::vector<Range> next;
    for (const Range& r : live) {
      const std::size_t base = r.size / (p + 1);
      const std::size_t extra = r.size % (p + 1);
      std::size_t at = r.begin;
      for (std::size_t c = 0; c <= p; ++c) {
        const std::size_t len = base + (c < extra ? 1 : 0);
        if (len == 0) break;
        if (c > 0) edges.push_back({t, r.begin, at});
        next.push_back({at, len});
        at += len;
      }
    }
    live = std::move(next);
  }
  return edges;
}

// Member positions reordered so the root comes first.
std::vector<std::size_t> root_first(const GroupSpec& group) {
  std::vector<std::size_t> order;
  order.reserve(group.members.size());
  for (std::size_t i = 0; i < group.members.size(); ++i) {
    if (group.members[i] == group.root) order.insert(order.begin(), i);
    else order.push_back(i);
  }
  return order;
}

Proc max_member(const GroupSpec& group) { return *std::max_element(group.members.begin(), group.members.end()); }

}  // namespace

void validate(const GroupSpec& group) {
  if (group.members.empty()) throw Error(Errc::BadShape, "empty group");
  std::vector<Proc> sorted = group.members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error(Errc::BadShape, "repeated group member");
  if (!std::binary_search(sorted.begin(), sorted.end(), group.root)) throw Error(Errc::BadShape, "root outside group");
}

std::size_t tree_rounds(std::size_t n, std::size_t p) { return ceil_log(p + 1, n); }

std::size_t append_broadcast(ScheduleBuilder& b, std::size_t round0, const GroupSpec& group,
                             const std::vector<Slot>& slots, std::size_t p) {
  validate(group);
  if (slots.size() != group.members.size()) throw Error(Errc::ShapeMismatch, "one slot per member");
  const auto order = root_first(group);
  for (const TreeEdge& e : tree_edges(order.size(), p)) {
    const std::size_t from = order[e.parent], to = order[e.child];
    b.send(round0 + e.round, group.members[from], group.members[to], {slots[from]}, {slots[to]}, Merge::Assign);
  }
  const std::size_t rounds = tree_rounds(group.members.size(), p);
  b.reserve_rounds(round0 + rounds);
  return rounds;
}

std::size_t append_reduce(ScheduleBuilder& b, std::size_t round0, const GroupSpec& group,
                          const std::vector<Slot>& slots, std::size_t p) {
  validate(group);
  if (slots.size() != group.members.size()) throw Error(Errc::ShapeMismatch, "one slot per member");
  const auto order = root_first(group);
  const std::size_t rounds = tree_rounds(group.members.size(), p);
  for (const TreeEdge& e : tree_edges(order.size(), p)) {
    const std::size_t from = order[e.child], to = order[e.parent];
    b.send(round0 + rounds + 1 - e.round, group.members[from], group.members[to], {slots[from]}, {slots[to]},
           Merge::Add);
  }
  b.reserve_rounds(round0 + rounds);
  return rounds;
}

namespace {

std::shared_ptr<const Schedule> tree_program(const FieldCtx& ctx, const GroupSpec& group, std::size_t W,
                                             std::size_t p, bool reduce) {
  validate(group);
  ScheduleBuilder b(ctx, max_member(group) + 1, W);
  std::vector<Slot> slots;
  for (Proc k : group.members) {
    slots.push_back(b.fresh(k));
    if (reduce || k == group.root) b.set_input(k, slots.back());
    if (!reduce || k == group.root) b.set_output(k, slots.back());
  }
  if (reduce) append_reduce(b, 0, group, slots, p);
  else append_broadcast(b, 0, group, slots, p);
  return b.build();
}

}  // namespace

std::shared_ptr<const Schedule> broadcast_program(const FieldCtx& ctx, const GroupSpec& group, std::size_t W,
                                                  std::size_t p) {
  return tree_program(ctx, group, W, p, false);
}

std::shared_ptr<const Schedule> reduce_program(const FieldCtx& ctx, const GroupSpec& group, std::size_t W,
                                               std::size_t p) {
  return tree_program(ctx, group, W, p, true);
}

double cost_broadcast(std::size_t n_group, std::size_t W, const NetParams& params) {
  const double per_round = params.alpha + params.beta * element_bits(params.q) * static_cast<double>(W);
  return per_round * static_cast<double>(tree_rounds(n_group, params.p));
}

}  // namespace decenc
