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

#include "combsim/random.hpp"

namespace combsim {

uint32_t draw(Rng &rng, uint32_t n)
{
    return n == 0 ? 0 : (uint32_t)(rng() % n);
}

static std::string action_name(size_t i)
{
    return std::string(1, (char)('a' + i % 26)) + (i >= 26 ? std::to_string(i / 26) : "");
}

static std::string prop_name(size_t i)
{
    static const char *names[] = {"p", "q", "r", "u", "v", "w"};
    return i < 6 ? names[i] : "p" + std::to_string(i);
}

static LabelSet random_labels(Rng &rng, size_t props)
{
    LabelSet l;
    for (size_t i = 0; i < props; i++) if (draw(rng, 2)) l.push_back(prop_name(i));
    return l;
}

static std::vector<StateId> random_targets(Rng &rng, size_t n, size_t max_succ)
{
    size_t k = 1 + draw(rng, (uint32_t)std::min(max_succ, n));
    std::vector<StateId> t;
    while (t.size() < k) {
        StateId s = draw(rng, (uint32_t)n);
        if (std::find(t.begin(), t.end(), s) == t.end()) t.push_back(s);
    }
    std::sort(t.begin(), t.end());
    return t;
}

static Game::Parts skeleton(size_t n, size_t actions, size_t props)
{
    Game::Parts p;
    for (size_t s = 0; s < n; s++) p.state_names.push_back("s" + std::to_string(s));
    for (size_t a = 0; a < actions; a++) p.action_names.push_back(action_name(a));
    for (size_t i = 0; i < props; i++) p.declared_props.push_back(prop_name(i));
    return p;
}

Game random_game(Rng &rng, const GameShape &shape)
{
    const size_t n = std::max<size_t>(shape.states, 1), m = std::max<size_t>(shape.actions, 1);
    Game::Parts p = skeleton(n, m, shape.props);
    for (size_t s = 0; s < n; s++) {
        p.labels.push_back(random_labels(rng, shape.props));
        p.arena.open_node();
        std::vector<ActionId> av;
        for (ActionId a = 0; a < m; a++) if (shape.full_avail || draw(rng, 3) != 0) av.push_back(a);
        if (av.empty()) av.push_back(draw(rng, (uint32_t)m));
        for (ActionId a : av) p.arena.add_move(a, random_targets(rng, n, shape.max_succ));
    }
    p.initial = 0;
    return Game::from_parts(std::move(p));
}

Game random_alternating_game(Rng &rng, const GameShape &shape)
{
    const size_t n = std::max<size_t>(shape.states, 1), m = std::max<size_t>(shape.actions, 1);
    Game::Parts p = skeleton(n, m, shape.props);
    for (size_t s = 0; s < n; s++) {
        bool player1 = draw(rng, 2);
        LabelSet l = random_labels(rng, shape.props);
        if (player1) l.emplace_back(kTurnProp);
        normalize_labels(l);
        p.labels.push_back(std::move(l));
        p.arena.open_node();
        if (player1) {
            std::vector<ActionId> av;
            for (ActionId a = 0; a < m; a++) if (draw(rng, 3) != 0) av.push_back(a);
            if (av.empty()) av.push_back(draw(rng, (uint32_t)m));
            for (ActionId a : av) {
                StateId t = draw(rng, (uint32_t)n);
                p.arena.add_move(a, std::span<const StateId>(&t, 1));
            }
        } else {
            p.arena.add_move(draw(rng, (uint32_t)m), random_targets(rng, n, shape.max_succ));
        }
    }
    p.initial = 0;
    return Game::from_parts(std::move(p));
}

Mdp random_mdp(Rng &rng, const MdpShape &shape)
{
    const size_t n = std::max<size_t>(shape.states, 2), m = std::max<size_t>(shape.actions, 1);
    Mdp::Parts p;
    for (size_t s = 0; s < n; s++) p.state_names.push_back("s" + std::to_string(s));
    for (size_t a = 0; a < m; a++) p.action_names.push_back(action_name(a));
    for (size_t i = 0; i < shape.props; i++) p.declared_props.push_back(prop_name(i));
    for (size_t s = 0; s < n; s++) {
        MdpRole r;
        if (shape.strictly_alternating) r = s % 2 == 0 ? MdpRole::Player1 : MdpRole::Prob;
        else r = draw(rng, 2) ? MdpRole::Player1 : MdpRole::Prob;
        p.roles.push_back(r);
        p.labels.push_back(random_labels(rng, shape.props));
    }
    // candidates per role, so strict alternation can be respected
    std::vector<StateId> p1, pr, all;
    for (StateId s = 0; s < n; s++) {
        (p.roles[s] == MdpRole::Player1 ? p1 : pr).push_back(s);
        all.push_back(s);
    }
    auto pick = [&](const std::vector<StateId> &from) { return from[draw(rng, (uint32_t)from.size())]; };
    p.moves.resize(n);
    p.dist.resize(n);
    for (StateId s = 0; s < n; s++) {
        const auto &targets = !shape.strictly_alternating ? all : (p.roles[s] == MdpRole::Player1 ? pr : p1);
        if (p.roles[s] == MdpRole::Player1) {
            for (ActionId a = 0; a < m; a++) {
                if (draw(rng, 3) != 0 || (a == m - 1 && p.moves[s].empty())) p.moves[s].emplace_back(a, pick(targets));
            }
        } else {
            size_t k = 1 + draw(rng, (uint32_t)std::min(shape.max_support, targets.size()));
            std::vector<StateId> supp;
            while (supp.size() < k) {
                StateId t = pick(targets);
                if (std::find(supp.begin(), supp.end(), t) == supp.end()) supp.push_back(t);
            }
            std::sort(supp.begin(), supp.end());
            std::vector<int64_t> w;
            int64_t total = 0;
            for (size_t i = 0; i < k; i++) {
                w.push_back(1 + draw(rng, 3));
                total += w.back();
            }
            for (size_t i = 0; i < k; i++) p.dist[s].emplace_back(supp[i], Rational::make(w[i], total));
        }
    }
    p.initial = 0;
    return Mdp::from_parts(std::move(p));
}

Partition random_partition(Rng &rng, const Game &g)
{
    Partition base = coarsest_partition(g);
    std::vector<uint32_t> b(g.num_states());
    for (StateId s = 0; s < g.num_states(); s++) {
        size_t sz = base.members(base.block_of(s)).size();
        b[s] = base.block_of(s) * (uint32_t)g.num_states() + draw(rng, (uint32_t)std::max<size_t>(1, sz / 2 + 1));
    }
    return Partition(std::move(b));
}

static Game::Parts parts_of(const Game &g)
{
    Game::Parts p;
    p.state_names = g.state_names();
    p.action_names = g.action_names();
    p.declared_props = g.declared_props();
    for (StateId s = 0; s < g.num_states(); s++) p.labels.push_back(g.labels(s));
    p.arena = g.arena();
    p.initial = g.initial();
    return p;
}

// one small change: a move loses or gains a target, or a label flips
static Game perturb(Rng &rng, const Game &g)
{
    Game::Parts p = parts_of(g);
    const size_t n = g.num_states();
    StateId s = draw(rng, (uint32_t)n);
    if (draw(rng, 3) == 0 && !g.propositions().empty()) {
        const std::string &q = g.propositions()[draw(rng, (uint32_t)g.propositions().size())];
        auto &l = p.labels[s];
        auto it = std::find(l.begin(), l.end(), q);
        if (it != l.end()) l.erase(it);
        else l.push_back(q);
        normalize_labels(l);
        return Game::from_parts(std::move(p));
    }
    Arena ar;
    uint32_t mm = g.arena().moves_begin(s) + draw(rng, g.arena().moves_end(s) - g.arena().moves_begin(s));
    for (StateId v = 0; v < n; v++) {
        ar.open_node();
        for (uint32_t m = g.arena().moves_begin(v); m < g.arena().moves_end(v); m++) {
            auto ts = g.arena().move_targets(m);
            std::vector<StateId> t(ts.begin(), ts.end());
            if (m == mm) {
                if (t.size() > 1 && draw(rng, 2)) {
                    t.erase(t.begin() + draw(rng, (uint32_t)t.size()));
                } else {
                    t.push_back(draw(rng, (uint32_t)n));
                    std::sort(t.begin(), t.end());
                    t.erase(std::unique(t.begin(), t.end()), t.end());
                }
            }
            ar.add_move(g.arena().move_label[m], t);
        }
    }
    p.arena = std::move(ar);
    return Game::from_parts(std::move(p));
}

Triple random_triple(Rng &rng, size_t max_states)
{
    const size_t hi = std::max<size_t>(max_states, 2);
    GameShape s1{2 + draw(rng, (uint32_t)hi - 1), 2, 1, 2, true};
    GameShape s2{2 + draw(rng, (uint32_t)hi - 1), 2, 2, 2, false};
    s2.states = std::min(s2.states, hi);
    s1.states = std::min(s1.states, hi);
    Triple t{random_game(rng, s1), random_game(rng, s2), Game()};
    Game prod = compose_games(t.g1, t.g2);
    switch (draw(rng, 4)) {
    case 0: t.spec = prod; break;
    case 1: t.spec = simabs(prod, random_partition(rng, prod)); break;
    case 2: t.spec = perturb(rng, prod); break;
    default: {
        // unrelated game over the product's label sets
        GameShape ss{2 + draw(rng, (uint32_t)hi - 1), 2, 0, 2, false};
        Game g = random_game(rng, ss);
        Game::Parts p = parts_of(g);
        p.declared_props = prod.propositions();
        for (auto &l : p.labels) l = prod.labels(draw(rng, (uint32_t)prod.num_states()));
        p.labels[p.initial] = prod.labels(prod.initial());
        t.spec = Game::from_parts(std::move(p));
    }
    }
    return t;
}

}
