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

#ifndef COMBSIM_RELATIONS_HPP
#define COMBSIM_RELATIONS_HPP

#include <utility>
#include <vector>

#include "combsim/model.hpp"
#include "combsim/solve.hpp"
#include "combsim/state_set.hpp"

namespace combsim {

/**
 * Node kinds of the simulation game. Pair, SimStage2, AltStage2 and
 * AltStage2b belong to the adversary, the others to the proponent.
 *
 *   Pair(s,s')            adversary picks the Sim or the Alt branch
 *   SimStage2(s,s')       adversary picks t in post(s)
 *   SimStage1(t,s')       proponent picks t' in post'(s')
 *   AltStage2(s,s')       adversary picks a in Av(s)
 *   AltStage1(s,s',a)     proponent picks a' in Av'(s')
 *   AltStage2b(s,s',a,a') adversary picks t' in delta'(s',a')
 *   AltStage1b(s,t',a,a') proponent picks t in delta(s,a)
 */
enum class NodeKind : uint8_t { Pair, SimStage2, SimStage1, AltStage2, AltStage1, AltStage2b, AltStage1b };

const char *node_kind_name(NodeKind k);
bool is_adversary_node(NodeKind k);

inline constexpr ActionId kNoAction = UINT32_MAX;

struct SimNode {
    NodeKind kind;
    StateId left;
    StateId right;
    ActionId a = kNoAction;    // left action (Alt stages)
    ActionId a2 = kNoAction;   // right action (AltStage2b, AltStage1b)
};

struct SimGameOptions {
    bool sim_gadget = true;
    bool alt_gadget = true;
    /**
     * Collapse gadget stages whose choices are forced: at a Pair where both
     * sides have one action the Alt branch jumps to AltStage2b, and an
     * AltStage1 choice whose two successor sets are singletons jumps to the
     * next Pair. On alternating games these are the Player-2 and Player-1
     * pairs respectively.
     */
    bool skip_step = false;
    // only build what is reachable from the initial pair
    bool from_initial = false;
};

/**
 * Explicit simulation game. Adversary nodes have one move whose targets
 * are the adversary's options; proponent nodes have one move per option
 * with a single target. Bad Pair nodes are not expanded.
 */
struct SimGame {
    Arena arena;
    std::vector<SimNode> nodes;
    StateSet bad;
    size_t left_size = 0;
    size_t right_size = 0;
    size_t skipped = 0;   // number of collapsed stages
    uint32_t initial_pair = kNoChoice;

    // node id of Pair(s,s'), or kNoChoice when not built
    uint32_t pair_node(StateId s, StateId t) const;

    // internal lookup table, see relations.cpp
    std::vector<uint32_t> pair_index;
};

/**
 * Game whose proponent wins from Pair(s,s') iff s is simulated by s'
 * in the combined sense (or by the gadgets selected in opt).
 */
SimGame build_combined_game(const Game &g, const Game &h, const SimGameOptions &opt = {});

/**
 * Like the combined game, but the Sim branch plays on g_sim and the Alt
 * branch on g_alt. Both must share state ids, labels and initial state
 * (MismatchedCarriers otherwise).
 */
SimGame build_modified_game(const Game &g_alt, const Game &g_sim, const Game &h, const SimGameOptions &opt = {});

/**
 * Relation between the states of a left and a right game, one bitset row
 * per left state.
 */
class RelationMatrix
{
public:
    RelationMatrix() = default;
    RelationMatrix(size_t left, size_t right) : right_(right), rows_(left, StateSet(right)) { }

    size_t left_size() const { return rows_.size(); }
    size_t right_size() const { return right_; }
    bool contains(StateId s, StateId t) const { return rows_[s].test(t); }
    void set(StateId s, StateId t, bool v = true) { rows_[s].assign(t, v); }
    const StateSet &row(StateId s) const { return rows_[s]; }
    StateSet &row(StateId s) { return rows_[s]; }
    size_t count() const;
    std::vector<std::pair<StateId, StateId>> pairs() const;
    bool subset_of(const RelationMatrix &o) const;
    bool operator==(const RelationMatrix &o) const;
    RelationMatrix intersect(const RelationMatrix &o) const;
    // relational composition: {(s,u) | exists t: (s,t) in this, (t,u) in o}
    RelationMatrix compose(const RelationMatrix &o) const;

private:
    size_t right_ = 0;
    std::vector<StateSet> rows_;
};

RelationMatrix relation_from_game(const SimGame &game, const SolveResult &sol);

struct RelationCheck {
    bool holds = false;
    size_t nodes = 0;
};

// largest combined simulation via the game
RelationMatrix max_combined_simulation(const Game &g, const Game &h, bool skip_step = false, size_t *nodes = nullptr);
// initial pair only, on the reachable part of the game
RelationCheck combined_simulates(const Game &g, const Game &h, bool skip_step = false);

/**
 * Greatest-fixpoint refinement on bitset rows; independent of the game
 * construction. rounds receives the number of passes until stable.
 */
RelationMatrix max_simulation(const Game &g, const Game &h, size_t *rounds = nullptr);
RelationMatrix max_alternating_simulation(const Game &g, const Game &h, size_t *rounds = nullptr);
RelationMatrix max_combined_simulation_refinement(const Game &g, const Game &h, size_t *rounds = nullptr);

// label-class ids shared by two games, for fast label comparison
std::pair<std::vector<uint32_t>, std::vector<uint32_t>> label_classes(const Game &g, const Game &h);

}

#endif
