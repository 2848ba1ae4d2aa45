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

#ifndef COMBSIM_LOGIC_HPP
#define COMBSIM_LOGIC_HPP

#include "combsim/formula.hpp"
#include "combsim/model.hpp"
#include "combsim/state_set.hpp"

namespace combsim {

enum class AtomPolicy {
    Strict,          // atoms outside the model's propositions raise UnknownAtom
    AbsentIsFalse,   // such atoms hold nowhere
};

/**
 * States of g satisfying f. Only strategy quantifiers are allowed.
 * Until is a least and WeakUntil a greatest fixpoint over the matching
 * one-step predecessor.
 */
StateSet eval_atl(const Game &g, const Formula &f, AtomPolicy policy = AtomPolicy::Strict);

/**
 * States of m satisfying f, with Almost/Positive quantifiers only. The
 * qualitative operators are reduced to game operators on mdp_to_game(m),
 * except Almost-Until which uses almost_until.
 */
StateSet eval_qctl(const Mdp &m, const Formula &f, AtomPolicy policy = AtomPolicy::Strict);

/**
 * Player-1 states with an action into x, and probabilistic states whose
 * support stays in y and meets x. Requires x subset of y.
 */
StateSet apre(const Mdp &m, const StateSet &y, const StateSet &x);

// states from which Player 1 reaches r through q with probability 1
StateSet almost_until(const Mdp &m, const StateSet &q, const StateSet &r);

// <<1>>X psi1 & <<1,2>>X psi2, which coincides with apre(psi1, psi2) when psi2 implies psi1
Formula f_apre(const Formula &psi1, const Formula &psi2);

/**
 * The almost_until fixpoint unrolled into nested formulas for an MDP with
 * n states: n outer rounds of n inner rounds each. Shares subformulas, so
 * the DAG has O(n^2) nodes.
 */
Formula almost_until_formula(const Formula &q, const Formula &r, size_t n);

/**
 * C-ATL formula that holds at s in g and fails at t in h. Both games must
 * be alternating and (s,t) must lie outside the largest combined
 * simulation (NotDistinguishable otherwise). The result is checked with
 * eval_atl before it is returned.
 */
Formula distinguishing_formula(const Game &g, const Game &h, StateId s, StateId t);

}

#endif
