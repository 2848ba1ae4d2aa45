/*
 * Copyright 2026 The combsim Authors
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

#ifndef COMBSIM_SOLVE_HPP
#define COMBSIM_SOLVE_HPP

#include <vector>

#include "combsim/model.hpp"
#include "combsim/state_set.hpp"

namespace combsim {

/**
 * Safety game on an arena. The proponent picks a move, the adversary picks a
 * target of that move; the proponent must keep the play out of `bad`.
 * A node without moves is lost by the proponent. A move without targets
 * cannot be completed by the adversary, so choosing it is safe.
 */
struct SafetyInstance {
    const Arena &arena;
    StateSet bad;
};

inline constexpr uint32_t kNoChoice = UINT32_MAX;
inline constexpr uint32_t kNoRank = UINT32_MAX;

struct SolveResult {
    StateSet proponent_win;
    StateSet adversary_win;
    // chosen move index per node in proponent_win (kNoChoice elsewhere)
    std::vector<uint32_t> proponent_strategy;
    // chosen target per move, for moves of adversary_win nodes outside bad
    std::vector<uint32_t> adversary_strategy;
    // attractor round per node in adversary_win, kNoRank elsewhere
    std::vector<uint32_t> rank;
};

/**
 * Linear-time attractor with per-node counters of moves not yet forced.
 * rank(v) = 1 + max over moves of the smallest rank among targets; bad
 * nodes have rank 0. Ties go to the lowest index.
 */
SolveResult solve_safety(const SafetyInstance &inst);

// {v | some move has all targets in x}
StateSet pre_exists_forall(const Arena &arena, const StateSet &x);
// {v | some move has a target in x}
StateSet pre_exists_exists(const Arena &arena, const StateSet &x);
// {v | every move has a target in x}
StateSet pre_forall_exists(const Arena &arena, const StateSet &x);
// {v | every move has all targets in x}
StateSet pre_forall_forall(const Arena &arena, const StateSet &x);

}

#endif
