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

#ifndef COMBSIM_CEGAR_HPP
#define COMBSIM_CEGAR_HPP

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "combsim/model.hpp"
#include "combsim/relations.hpp"
#include "combsim/solve.hpp"
#include "combsim/state_set.hpp"

namespace combsim {

/**
 * Partition of [0, n) into blocks. Block ids are renumbered by first
 * occurrence, so equal partitions compare equal.
 */
class Partition
{
public:
    Partition() = default;
    explicit Partition(std::vector<uint32_t> block_of);
    static Partition singletons(size_t n);

    size_t size() const { return block_of_.size(); }
    size_t num_blocks() const { return members_.size(); }
    uint32_t block_of(StateId s) const { return block_of_[s]; }
    const std::vector<StateId> &members(uint32_t b) const { return members_[b]; }
    // every block of this lies inside a block of o
    bool refines(const Partition &o) const;
    bool operator==(const Partition &o) const { return block_of_ == o.block_of_; }

private:
    std::vector<uint32_t> block_of_;
    std::vector<std::vector<StateId>> members_;
};

// label-equivalence classes
Partition coarsest_partition(const Game &g);
// throws InvalidPartition when sizes differ or a block mixes labels
void validate_partition(const Game &g, const Partition &p);

/**
 * Existential abstraction: a block offers every action of its members and
 * moves to every block some member reaches with it.
 */
Game simabs(const Game &g, const Partition &p);

/**
 * Universal abstraction: a block offers every action of its members, and
 * action a leads to the blocks that every member reaches with a. The
 * successor set is empty when some member lacks a or the members share no
 * target block; the result is therefore built non-strict.
 */
Game altabs(const Game &g, const Partition &p);

struct CegarOptions {
    size_t max_iters = std::numeric_limits<size_t>::max();
    bool improved_refine = false;
    bool skip_step = false;
    // keep counterexample DAGs of every iteration in the result
    bool keep_cex = false;
};

/**
 * Premise of the assume-guarantee rule: the modified game between
 * g1 || altabs(g2) and g1 || simabs(g2) on the left and spec on the
 * right. Both composites share one carrier of (g1 state, block) pairs.
 */
struct Premise {
    Composite alt;
    Game sim;
    SimGame game;
    SolveResult sol;
    bool holds = false;
};

Premise check_ag_premise(const Game &g1, const Game &g2, const Game &spec, const Partition &p, bool skip_step = false);

/**
 * Adversary counterexample: adversary nodes keep their strategy choice,
 * proponent nodes keep every option. Edges lower the rank; leaves are bad
 * pairs. Node 0 is the root (the initial pair).
 */
struct CexNode {
    uint32_t game_node = 0;
    SimNode node{NodeKind::Pair, 0, 0};
    uint32_t rank = 0;
    bool leaf = false;
    std::vector<uint32_t> succ;   // DAG indices, one per move
    StateSet conc;                // filled by concretize
};

struct CexDag {
    std::vector<CexNode> nodes;
};

CexDag extract_cex(const SimGame &game, const SolveResult &sol);

/**
 * For every DAG node, the states of its g2 block from which the concrete
 * adversary can follow the counterexample. Computed bottom-up.
 */
void concretize(CexDag &dag, const Game &g1, const Game &g2, const Partition &p, const Premise &premise);
bool is_feasible(const CexDag &dag, const Game &g2);

/**
 * Splits every block by membership in the concretized sets of the DAG
 * nodes over that block. If that separates nothing, blocks on the DAG are
 * split by their one-step behaviour instead. NotRefinable if neither
 * splits a block.
 */
Partition refine(const Partition &p, const CexDag &dag, const Game &g2, const Premise &premise, bool improved = false);

enum class Verdict { Holds, Refuted, Exhausted };
const char *verdict_name(Verdict v);

// printable counterexample, names resolved
struct CexNodeView {
    std::string kind;
    std::string left;
    std::string right;
    std::string action;
    std::string action2;
    uint32_t rank = 0;
    std::vector<uint32_t> succ;
    std::vector<std::string> conc;
};

struct CexRecord {
    size_t iteration = 0;
    size_t partition_size = 0;
    bool feasible = false;
    std::vector<CexNodeView> nodes;
};

struct CegarResult {
    Verdict verdict = Verdict::Exhausted;
    size_t iterations = 0;    // premise checks performed
    size_t refinements = 0;
    size_t partition_size = 0;
    double time_ms = 0;
    size_t peak_nodes = 0;
    Partition partition;
    std::vector<CexRecord> cex;
};

CegarResult ag_cegar(const Game &g1, const Game &g2, const Game &spec, const CegarOptions &opt = {});
CegarResult ag_cegar(const Mdp &m1, const Mdp &m2, const Mdp &spec, const CegarOptions &opt = {});

// combined simulation of g1 || g2 by spec, without abstraction
RelationCheck monolithic_check(const Game &g1, const Game &g2, const Game &spec, bool skip_step = false);

}

#endif
