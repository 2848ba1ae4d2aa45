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
#include <functional>
#include <stdexcept>

#include "oracles.hpp"

namespace oracle {

using namespace combsim;

using Graph = std::vector<std::vector<StateId>>;

Rel relation(const Game &g, const Game &h, bool sim, bool alt)
{
    const size_t nl = g.num_states(), nr = h.num_states();
    Rel r(nl, std::vector<bool>(nr));
    for (StateId s = 0; s < nl; s++) {
        for (StateId t = 0; t < nr; t++) r[s][t] = g.labels(s) == h.labels(t);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < nl; s++) {
            for (StateId t = 0; t < nr; t++) {
                if (!r[s][t]) continue;
                bool ok = true;
                if (sim) {
                    // every move of s is matched by some move of t
                    for (ActionId a : g.avail(s)) {
                        for (StateId u : g.delta(s, a)) {
                            bool found = false;
                            for (ActionId b : h.avail(t)) {
                                for (StateId v : h.delta(t, b)) found = found || r[u][v];
                            }
                            ok = ok && found;
                        }
                    }
                }
                if (alt) {
                    // every action of s has an answer all of whose outcomes are covered
                    for (ActionId a : g.avail(s)) {
                        bool answered = false;
                        for (ActionId b : h.avail(t)) {
                            bool all = true;
                            for (StateId v : h.delta(t, b)) {
                                bool some = false;
                                for (StateId u : g.delta(s, a)) some = some || r[u][v];
                                all = all && some;
                            }
                            answered = answered || all;
                        }
                        ok = ok && answered;
                    }
                }
                if (!ok) {
                    r[s][t] = false;
                    changed = true;
                }
            }
        }
    }
    return r;
}

std::vector<uint32_t> attractor_rounds(const Arena &ar, const Bits &bad)
{
    const size_t n = ar.num_nodes();
    std::vector<uint32_t> rank(n, UINT32_MAX);
    for (size_t v = 0; v < n; v++) if (bad[v]) rank[v] = 0;
    for (uint32_t round = 1;; round++) {
        std::vector<uint32_t> fresh;
        for (uint32_t v = 0; v < n; v++) {
            if (rank[v] != UINT32_MAX) continue;
            bool all = true;
            for (uint32_t m = ar.moves_begin(v); m < ar.moves_end(v); m++) {
                bool some = false;
                for (uint32_t t : ar.move_targets(m)) some = some || rank[t] < round;
                all = all && some;
            }
            if (all) fresh.push_back(v);
        }
        if (fresh.empty()) return rank;
        for (uint32_t v : fresh) rank[v] = round;
    }
}

Bits to_bits(const StateSet &s)
{
    Bits b(s.size());
    for (size_t i = 0; i < s.size(); i++) b[i] = s.test(i);
    return b;
}

namespace {

// graph questions about the paths from s

bool has_cycle_within(const Graph &e, const Bits &region, StateId s)
{
    // DFS colouring restricted to region
    std::vector<int> colour(e.size(), 0);
    std::function<bool(StateId)> dfs = [&](StateId v) {
        colour[v] = 1;
        for (StateId t : e[v]) {
            if (!region[t]) continue;
            if (colour[t] == 1) return true;
            if (colour[t] == 0 && dfs(t)) return true;
        }
        colour[v] = 2;
        return false;
    };
    return region[s] && dfs(s);
}

Bits reach_within(const Graph &e, const Bits &through, StateId s)
{
    // states reachable from s where only `through` states are left again
    Bits seen(e.size());
    std::vector<StateId> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
        StateId v = stack.back();
        stack.pop_back();
        if (!through[v]) continue;
        for (StateId t : e[v]) {
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    return seen;
}

Bits minus(const Bits &a, const Bits &b)
{
    Bits r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i] && !b[i];
    return r;
}

bool all_until(const Graph &e, const Bits &a, const Bits &b, StateId s)
{
    Bits mid = minus(a, b);
    Bits r = reach_within(e, mid, s);
    for (size_t v = 0; v < e.size(); v++) {
        if (r[v] && !a[v] && !b[v]) return false;
    }
    return !has_cycle_within(e, mid, s);
}

bool all_weak(const Graph &e, const Bits &a, const Bits &b, StateId s)
{
    Bits r = reach_within(e, minus(a, b), s);
    for (size_t v = 0; v < e.size(); v++) {
        if (r[v] && !a[v] && !b[v]) return false;
    }
    return true;
}

bool some_until(const Graph &e, const Bits &a, const Bits &b, StateId s)
{
    Bits r = reach_within(e, minus(a, b), s);
    for (size_t v = 0; v < e.size(); v++) if (r[v] && b[v]) return true;
    return false;
}

bool some_weak(const Graph &e, const Bits &a, const Bits &b, StateId s)
{
    return some_until(e, a, b, s) || has_cycle_within(e, a, s);
}

Graph full_graph(const Game &g)
{
    Graph e(g.num_states());
    for (StateId v = 0; v < g.num_states(); v++) e[v] = g.post(v);
    return e;
}

// calls fn(graph) for each memoryless strategy of the chosen player
void each_strategy(const Game &g, bool player1, const std::function<void(const Graph &)> &fn)
{
    const size_t n = g.num_states();
    std::vector<std::pair<StateId, ActionId>> slots;   // (state, action) choice points
    std::vector<size_t> radix;
    for (StateId v = 0; v < n; v++) {
        if (player1) {
            slots.emplace_back(v, 0);
            radix.push_back(g.avail(v).size());
        } else {
            for (ActionId a : g.avail(v)) {
                slots.emplace_back(v, a);
                radix.push_back(g.delta(v, a).size());
            }
        }
    }
    std::vector<size_t> digit(slots.size(), 0);
    while (true) {
        Graph e(n);
        for (size_t i = 0; i < slots.size(); i++) {
            auto [v, a] = slots[i];
            if (player1) {
                ActionId c = g.avail(v)[digit[i]];
                for (StateId t : g.delta(v, c)) e[v].push_back(t);
            } else {
                e[v].push_back(g.delta(v, a)[digit[i]]);
            }
        }
        fn(e);
        size_t k = 0;
        while (k < digit.size() && ++digit[k] == radix[k]) digit[k++] = 0;
        if (k == digit.size()) return;
    }
}

Bits atom_bits(const std::vector<LabelSet> &labels, const std::string &p, bool neg)
{
    Bits r(labels.size());
    for (size_t s = 0; s < labels.size(); s++) {
        bool has = std::find(labels[s].begin(), labels[s].end(), p) != labels[s].end();
        r[s] = has != neg;
    }
    return r;
}

template <typename QuantFn>
Bits eval(const Formula &f, const std::vector<LabelSet> &labels, const QuantFn &quant)
{
    const size_t n = labels.size();
    switch (f->kind) {
    case FormulaKind::True: return Bits(n, true);
    case FormulaKind::False: return Bits(n, false);
    case FormulaKind::Atom: return atom_bits(labels, f->atom, false);
    case FormulaKind::NegAtom: return atom_bits(labels, f->atom, true);
    case FormulaKind::And:
    case FormulaKind::Or: {
        bool conj = f->kind == FormulaKind::And;
        Bits r(n, conj);
        for (auto &c : f->args) {
            Bits x = eval(c, labels, quant);
            for (size_t s = 0; s < n; s++) r[s] = conj ? (r[s] && x[s]) : (r[s] || x[s]);
        }
        return r;
    }
    case FormulaKind::Quant: {
        Bits a = f->op == PathOp::Next ? Bits(n, true) : eval(f->args[0], labels, quant);
        Bits b = eval(f->args.back(), labels, quant);
        return quant(f, a, b);
    }
    }
    throw std::logic_error("oracle: bad formula");
}

}

Bits atl(const Game &g, const Formula &f)
{
    const size_t n = g.num_states();
    std::vector<LabelSet> labels;
    for (StateId s = 0; s < n; s++) labels.push_back(g.labels(s));
    const Graph full = full_graph(g);

    auto quant = [&](const Formula &node, const Bits &a, const Bits &b) {
        Bits r(n, false);
        const Quantifier q = node->quant;
        if (node->op == PathOp::Next) {
            for (StateId s = 0; s < n; s++) {
                bool any_a = false, all_a = true;
                for (ActionId x : g.avail(s)) {
                    bool all_t = true, any_t = false;
                    for (StateId t : g.delta(s, x)) {
                        all_t = all_t && b[t];
                        any_t = any_t || b[t];
                    }
                    bool good = (q == Quantifier::P1 || q == Quantifier::None) ? all_t : any_t;
                    any_a = any_a || good;
                    all_a = all_a && good;
                }
                r[s] = (q == Quantifier::P1 || q == Quantifier::Both) ? any_a : all_a;
            }
            return r;
        }
        const bool until = node->op == PathOp::Until;
        auto all_paths = [&](const Graph &e, StateId s) { return until ? all_until(e, a, b, s) : all_weak(e, a, b, s); };
        if (q == Quantifier::Both) {
            for (StateId s = 0; s < n; s++) r[s] = until ? some_until(full, a, b, s) : some_weak(full, a, b, s);
        } else if (q == Quantifier::None) {
            for (StateId s = 0; s < n; s++) r[s] = all_paths(full, s);
        } else {
            each_strategy(g, q == Quantifier::P1, [&](const Graph &e) {
                for (StateId s = 0; s < n; s++) if (!r[s] && all_paths(e, s)) r[s] = true;
            });
        }
        return r;
    };
    return eval(f, labels, quant);
}

Bits qctl(const Mdp &m, const Formula &f)
{
    const size_t n = m.num_states();
    std::vector<LabelSet> labels;
    for (StateId s = 0; s < n; s++) labels.push_back(m.labels(s));

    // induced chains, one per memoryless strategy
    std::vector<Graph> chains;
    {
        std::vector<size_t> digit(n, 0);
        while (true) {
            Graph e(n);
            for (StateId v = 0; v < n; v++) {
                if (m.role(v) == MdpRole::Player1) e[v].push_back(m.moves(v)[digit[v]].second);
                else e[v] = m.support(v);
            }
            chains.push_back(std::move(e));
            size_t k = 0;
            while (k < n) {
                size_t radix = m.role(k) == MdpRole::Player1 ? m.moves(k).size() : 1;
                if (++digit[k] < radix) break;
                digit[k++] = 0;
            }
            if (k == n) break;
        }
    }

    auto reach = [&](const Graph &e, StateId s) { return reach_within(e, Bits(n, true), s); };

    auto quant = [&](const Formula &node, const Bits &a, const Bits &b) {
        Bits r(n, false);
        const bool almost = node->quant == Quantifier::Almost;
        if (node->op == PathOp::Next) {
            for (StateId s = 0; s < n; s++) {
                if (m.role(s) == MdpRole::Player1) {
                    for (auto &[x, t] : m.moves(s)) r[s] = r[s] || b[t];
                } else {
                    bool all = true, any = false;
                    for (StateId t : m.support(s)) {
                        all = all && b[t];
                        any = any || b[t];
                    }
                    r[s] = almost ? all : any;
                }
            }
            return r;
        }
        const Bits mid = minus(a, b);
        for (const Graph &e : chains) {
            // bottom SCC membership, by mutual reachability
            std::vector<Bits> rch(n);
            for (StateId v = 0; v < n; v++) rch[v] = reach(e, v);
            Bits in_good_bscc(n, false);
            for (StateId v = 0; v < n; v++) {
                bool bottom = true, inside = true;
                for (StateId u = 0; u < n; u++) {
                    if (rch[v][u]) {
                        bottom = bottom && rch[u][v];
                        inside = inside && a[u];
                    }
                }
                in_good_bscc[v] = bottom && inside;
            }
            for (StateId s = 0; s < n; s++) {
                if (r[s]) continue;
                Bits region = reach_within(e, mid, s);
                bool violates = false;
                for (StateId v = 0; v < n; v++) violates = violates || (region[v] && !a[v] && !b[v]);
                bool ok;
                if (node->op == PathOp::Until && almost) {
                    // every reachable undecided state can still reach b
                    ok = !violates;
                    for (StateId v = 0; v < n && ok; v++) {
                        if (region[v] && mid[v]) ok = some_until(e, a, b, v);
                    }
                } else if (node->op == PathOp::Until) {
                    ok = some_until(e, a, b, s);
                } else if (almost) {
                    ok = !violates;
                } else {
                    // reach b, or reach a bottom SCC inside a while staying in a
                    ok = some_until(e, a, b, s);
                    Bits stay = reach_within(e, a, s);
                    for (StateId v = 0; v < n && !ok; v++) ok = stay[v] && a[v] && in_good_bscc[v];
                }
                r[s] = ok;
            }
        }
        return r;
    };
    return eval(f, labels, quant);
}

Formula random_formula(Rng &rng, size_t depth, const std::vector<std::string> &atoms, const std::vector<Quantifier> &quants)
{
    auto literal = [&]() -> Formula {
        uint32_t k = draw(rng, (uint32_t)(2 * atoms.size() + 2));
        if (k == 2 * atoms.size()) return f_true();
        if (k == 2 * atoms.size() + 1) return f_false();
        return k % 2 ? f_neg_atom(atoms[k / 2]) : f_atom(atoms[k / 2]);
    };
    if (depth == 0) return literal();
    switch (draw(rng, 6)) {
    case 0: return literal();
    case 1: return f_and(random_formula(rng, depth - 1, atoms, quants), random_formula(rng, depth - 1, atoms, quants));
    case 2: return f_or(random_formula(rng, depth - 1, atoms, quants), random_formula(rng, depth - 1, atoms, quants));
    default: {
        Quantifier q = quants[draw(rng, (uint32_t)quants.size())];
        switch (draw(rng, 3)) {
        case 0: return f_next(q, random_formula(rng, depth - 1, atoms, quants));
        case 1: return f_until(q, random_formula(rng, depth - 1, atoms, quants), random_formula(rng, depth - 1, atoms, quants));
        default: return f_weak_until(q, random_formula(rng, depth - 1, atoms, quants), random_formula(rng, depth - 1, atoms, quants));
        }
    }
    }
}

}
