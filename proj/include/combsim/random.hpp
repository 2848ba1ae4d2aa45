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

#ifndef COMBSIM_RANDOM_HPP
#define COMBSIM_RANDOM_HPP

#include <random>

#include "combsim/cegar.hpp"
#include "combsim/model.hpp"

namespace combsim {

// Draws use plain modulo on mt19937_64 output so that a seed gives the
// same instance with every standard library.
using Rng = std::mt19937_64;

uint32_t draw(Rng &rng, uint32_t n);   // uniform-ish in [0, n)

struct GameShape {
    size_t states = 4;
    size_t actions = 2;
    size_t props = 1;
    size_t max_succ = 2;
    bool full_avail = false;   // every action available everywhere
};

Game random_game(Rng &rng, const GameShape &shape);

// Player-1 states (labelled turn) with singleton successors, Player-2 states with one action
Game random_alternating_game(Rng &rng, const GameShape &shape);

struct MdpShape {
    size_t states = 4;
    size_t actions = 2;
    size_t props = 1;
    size_t max_support = 2;
    bool strictly_alternating = false;
};

Mdp random_mdp(Rng &rng, const MdpShape &shape);

// random refinement of the label classes
Partition random_partition(Rng &rng, const Game &g);

/**
 * Components and specification for compositional checks. g1 offers every
 * action everywhere so that g1 || g2 never deadlocks. The specification is
 * the exact product, a quotient of it, a perturbed copy, or unrelated.
 */
struct Triple {
    Game g1, g2, spec;
};

Triple random_triple(Rng &rng, size_t max_states);

}

#endif
