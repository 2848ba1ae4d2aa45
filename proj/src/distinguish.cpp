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

#include <algorithm>
#include <map>
#include <unordered_map>

#include "combsim/logic.hpp"
#include "combsim/relations.hpp"

namespace combsim {

namespace {

/*
 * Hash-consing so that equal subformulas are the same pointer; lists of
 * conjuncts and disjuncts can then be deduplicated by address.
 */
class Interner
{
public:
    Formula intern(Formula f)
    {
        std::string key = std::to_string((int)f->kind) + "|" + f->atom + "|" + std::to_string((int)f->quant) + "|" +
                          std::to_string((int)f->op);
        for (auto &c : f->args) key += "|" + std::to_string((uintptr_t)c.get());
        auto [it, fresh] = table_.emplace(key, f);
        return it->second;
    }

    Formula conj(std::vector<Formula> fs) { return intern(f_and(dedupe(std::move(fs)))); }
    Formula disj(std::vector<Formula> fs) { return intern(f_or(dedupe(std::move(fs)))); }

private:
    static std::vector<Formula> dedupe(std::vector<Formula> fs)
    {
        std::vector<Formula> out;
        for (auto &f : fs) {
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
        }
        return out;
    }

    std::map<std::string, Formula> table_;
};

/*
 * Follows the adversary's attractor strategy from a lost Pair. Each step
 * strictly lowers the rank, so the recursion ends at bad pairs.
 *
 * Sim branch, adversary moved s to u:     Q X  AND_{t' in post(t)} phi(u, t')
 * Alt branch, adversary chose action a:   <<1>>X AND_{a'} OR_{u in delta(s,a)} phi(u, t'_a')
 * where t'_a' is the adversary's answer to a'. Q is <<1>> at Player-1
 * pairs and <<1,2>> at Player-2 pairs.
 */
class Builder
{
public:
    Builder(const Game &g, const Game &h, const SimGame &game, const SolveResult &sol) : g_(g), h_(h), game_(game), sol_(sol) { }

    Formula pair(uint32_t v)
    {
        auto it = memo_.find(v);
        if (it != memo_.end()) return it->second;
        Formula f = compute(v);
        memo_.emplace(v, f);
        return f;
    }

private:
    uint32_t adversary_choice(uint32_t v) const
    {
        uint32_t m = game_.arena.moves_begin(v);
        uint32_t w = sol_.adversary_strategy[m];
        if (w == kNoChoice) throw std::logic_error("distinguishing_formula: missing adversary choice");
        return w;
    }

    // target of each proponent move
    std::vector<uint32_t> options(uint32_t v) const
    {
        std::vector<uint32_t> r;
        for (uint32_t m = game_.arena.moves_begin(v); m < game_.arena.moves_end(v); m++) r.push_back(game_.arena.move_targets(m)[0]);
        return r;
    }

    Formula compute(uint32_t v)
    {
        const SimNode &n = game_.nodes[v];
        if (game_.bad.test(v)) {
            const LabelSet &l = g_.labels(n.left), &r = h_.labels(n.right);
            for (auto &p : l) {
                if (!std::binary_search(r.begin(), r.end(), p)) return in_.intern(f_atom(p));
            }
            for (auto &p : r) {
                if (!std::binary_search(l.begin(), l.end(), p)) return in_.intern(f_neg_atom(p));
            }
            throw std::logic_error("distinguishing_formula: bad pair with equal labels");
        }
        const uint32_t branch = adversary_choice(v);
        std::vector<Formula> outer;
        if (game_.nodes[branch].kind == NodeKind::SimStage2) {
            for (uint32_t w : options(adversary_choice(branch))) outer.push_back(pair(w));
            Quantifier q = g_.has_label(n.left, kTurnProp) ? Quantifier::P1 : Quantifier::Both;
            return in_.intern(f_next(q, in_.conj(std::move(outer))));
        }
        for (uint32_t stage2b : options(adversary_choice(branch))) {
            std::vector<Formula> inner;
            for (uint32_t w : options(adversary_choice(stage2b))) inner.push_back(pair(w));
            outer.push_back(in_.disj(std::move(inner)));
        }
        return in_.intern(f_next(Quantifier::P1, in_.conj(std::move(outer))));
    }

    const Game &g_, &h_;
    const SimGame &game_;
    const SolveResult &sol_;
    Interner in_;
    std::unordered_map<uint32_t, Formula> memo_;
};

}

Formula distinguishing_formula(const Game &g, const Game &h, StateId s, StateId t)
{
    AlternatingGame::validate(g);
    AlternatingGame::validate(h);
    if (s >= g.num_states() || t >= h.num_states()) throw Error(ErrorKind::DanglingReference, "state index out of range");

    SimGame game = build_combined_game(g, h);
    SolveResult sol = solve_safety({game.arena, game.bad});
    uint32_t v = game.pair_node(s, t);
    if (sol.proponent_win.test(v)) {
        throw Error(ErrorKind::NotDistinguishable, "(" + g.state_name(s) + "," + h.state_name(t) + ") is combined-similar");
    }
    Formula f = Builder(g, h, game, sol).pair(v);

    if (!eval_atl(g, f, AtomPolicy::AbsentIsFalse).test(s) || eval_atl(h, f, AtomPolicy::AbsentIsFalse).test(t)) {
        throw std::logic_error("distinguishing_formula: result does not separate the pair");
    }
    return f;
}

}
