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
#include <memory>
#include <vector>

#include "decenc/netsim.hpp"
#include "decenc/schedule.hpp"

namespace decenc {

struct GroupSpec {
  std::vector<Proc> members;
  Proc root = 0;
};

/// Throws Error(BadShape) unless root is a member and members are distinct.
void validate(const GroupSpec& group);

/// ceil(log_{p+1} n).
std::size_t tree_rounds(std::size_t n, std::size_t p);

/// Binomial (p+1)-ary broadcast of one symbol. slots[i] belongs to
/// group.members[i]; the root's slot is the source and every other slot is
/// overwritten. Rounds are round0+1 .. round0+tree_rounds. Returns the rounds used.
std::size_t append_broadcast(ScheduleBuilder& b, std::size_t round0, const GroupSpec& group,
                             const std::vector<Slot>& slots, std::size_t p);

/// The broadcast tree run backwards with additive merges: the root's slot
/// ends up with the sum of all members' slots.
std::size_t append_reduce(ScheduleBuilder& b, std::size_t round0, const GroupSpec& group,
                          const std::vector<Slot>& slots, std::size_t p);

/// Stand-alone programs over processors 0..max(member). Only the root takes
/// input (broadcast) or produces output (reduce).
std::shared_ptr<const Schedule> broadcast_program(const FieldCtx& ctx, const GroupSpec& group, std::size_t W,
                                                  std::size_t p);
std::shared_ptr<const Schedule> reduce_program(const FieldCtx& ctx, const GroupSpec& group, std::size_t W,
                                               std::size_t p);

/// (alpha + beta ceil(log2 q) W) ceil(log_{p+1} N).
double cost_broadcast(std::size_t n_group, std::size_t W, const NetParams& params);

}  // namespace decenc
