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
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "combsim/cegar.hpp"

namespace combsim {

/*
 * Partitions
 */

Partition::Partition(std::vector<uint32_t> block_of)
{
    std::unordered_map<uint32_t, uint32_t> renum;
    block_of_.resize(block_of.size());
    for (StateId s = 0; s < block_of.size(); s++) {
        auto [it, fresh] = renum.emplace(block_of[s], (uint32_t)renum.size());
        if (fresh) members_.emplace_back();
        block_of_[s] = it->second;
        members_[it->second].push_back(s);
    }
}

Partition Partition::singletons(size_t n)
{
    std::vector<uint32_t> b(n);
    for (uint32_t i = 0; i < n; i++) b[i] = i;
    return Partition(std::move(b));
}

bool Partition::refines(const Partition &o) const
{
    if (o.size() != size()) return false;
    for (auto &m : members_) {
        for (StateId s : m) if (o.block_of(s) != o.block_of(m[0])) return false;
    }
    return true;
}

Partition coarsest_partition(const Game &g)
{
    std::map<LabelSet, uint32_t> cls;
    std::vector<uint32_t> b(g.num_states());
    for (StateId s = 0; s < g.num_states(); s++) b[s] = cls.emplace(g.labels(s), (uint32_t)cls.size()).first->second;
    return Partition(std::move(b));
}

void validate_partition(const Game &g, const Partition &p)
{
    if (p.size() != g.num_states()) throw Error(ErrorKind::InvalidPartition, "partition does not cover the game");
    for (uint32_t b = 0; b < p.num_blocks(); b++) {
        for (StateId s : p.members(b)) {
            if (g.labels(s) != g.labels(p.members(b)[0])) {
                throw Error(ErrorKind::InvalidPartition, "block mixes the labels of " + g.state_name(s) + " and " + g.state_name(p.members(b)[0]));
            }
        }
    }
}

static Game abstraction(const Game &g, const Partition &p, bool universal)
{
    validate_partition(g, p);
    Game::Parts parts;
    parts.action_names = g.action_names();
    parts.declared_props = g.declared_props();
    parts.initial = p.block_of(g.initial());
    const size_t nb = p.num_blocks();
    for (uint32_t b = 0; b < nb; b++) {
        const auto &mem = p.members(b);
        std::string name = "{";
        for (size_t i = 0; i < mem.size(); i++) name += (i ? "," : "") + g.state_name(mem[i]);
        parts.state_names.push_back(name + "}");
        parts.labels.push_back(g.labels(mem[0]));

        // per action: how many members reach each block
        std::map<ActionId, std::map<uint32_t, size_t>> reach;
        std::map<ActionId, size_t> offered;
        for (StateId s : mem) {
            for (ActionId a : g.avail(s)) {
                offered[a]++;
                std::set<uint32_t> blocks;
                for (StateId t : g.delta(s, a)) blocks.insert(p.block_of(t));
                for (uint32_t c : blocks) reach[a][c]++;
            }
        }
        parts.arena.open_node();
        std::vector<uint32_t> ts;
        for (auto &[a, cnt] : offered) {
            ts.clear();
            for (auto &[c, k] : reach[a]) {
                if (!universal || (cnt == mem.size() && k == mem.size())) ts.push_back(c);
            }
            parts.arena.add_move(a, ts);
        }
    }
    return Game::from_parts(std::move(parts), !universal);
}

Game simabs(const Game &g, const Partition &p)
{
    return abstraction(g, p, false);
}

Game altabs(const Game &g, const Partition &p)
{
    return abstraction(g, p, true);
}

/*
 * Premise check
 */

Premise check_ag_premise(const Game &g1, const Game &g2, const Game &spec, const Partition &p, bool skip_step)
{
    Game a = altabs(g2, p);
    Game s = simabs(g2, p);
    ComposeOptions opt;
    opt.allow_empty_avail = true;
    Composite sim = compose_games_ex(g1, s, opt);
    // the universal successors are a subset of the existential ones, so the
    // reachable carrier of the existential product is closed for both
    opt.carrier = &sim.pairs;
    Premise pr;
    pr.alt = compose_games_ex(g1, a, opt);
    pr.sim = std::move(sim.game);

    SimGameOptions gopt;
    gopt.from_initial = true;
    gopt.skip_step = skip_step;
    pr.game = build_modified_game(pr.alt.game, pr.sim, spec, gopt);
    pr.sol = solve_safety({pr.game.arena, pr.game.bad});
    pr.holds = pr.sol.proponent_win.test(pr.game.initial_pair);
    return pr;
}

/*
 * Counterexamples
 */

CexDag extract_cex(const SimGame &game, const SolveResult &sol)
{
    const uint32_t root = game.initial_pair;
    if (root == kNoChoice || sol.proponent_win.test(root)) throw Error(ErrorKind::NoCounterexample, "the proponent wins the initial pair");

    CexDag dag;
    std::unordered_map<uint32_t, uint32_t> index;
    auto visit = [&](uint32_t v) {
        auto [it, fresh] = index.emplace(v, (uint32_t)dag.nodes.size());
        if (fresh) {
            CexNode n;
            n.game_node = v;
            n.node = game.nodes[v];
            n.rank = sol.rank[v];
            dag.nodes.push_back(std::move(n));
        }
        return it->second;
    };
    visit(root);
    for (uint32_t i = 0; i < dag.nodes.size(); i++) {
        const uint32_t v = dag.nodes[i].game_node;
        if (game.bad.test(v)) {
            dag.nodes[i].leaf = true;
            continue;
        }
        std::vector<uint32_t> succ;
        for (uint32_t m = game.arena.moves_begin(v); m < game.arena.moves_end(v); m++) {
            if (is_adversary_node(game.nodes[v].kind)) {
                succ.push_back(visit(sol.adversary_strategy[m]));
            } else {
                succ.push_back(visit(game.arena.move_targets(m)[0]));
            }
        }
        dag.nodes[i].succ = std::move(succ);
    }
    return dag;
}

namespace {

// action ids of the composite translated to g1 and g2
struct ActionMaps {
    std::vector<std::optional<ActionId>> to_g1, to_g2;

    ActionMaps(const Game &comp, const Game &g1, const Game &g2)
    {
        for (ActionId a = 0; a < comp.num_actions(); a++) {
            to_g1.push_back(g1.find_action(comp.action_name(a)));
            to_g2.push_back(g2.find_action(comp.action_name(a)));
        }
    }
};

class Concretizer
{
public:
    Concretizer(CexDag &dag, const Game &g1, const Game &g2, const Partition &p, const Premise &pr)
        : dag_(dag), g1_(g1), g2_(g2), p_(p), pr_(pr), acts_(pr.alt.game, g1, g2) { }

    void run()
    {
        std::vector<uint32_t> order(dag_.nodes.size());
        for (uint32_t i = 0; i < order.size(); i++) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) { return dag_.nodes[x].rank < dag_.nodes[y].rank; });
        for (uint32_t i : order) {
            check(i);
            dag_.nodes[i].conc = compute(dag_.nodes[i]);
        }
    }

private:
    void check(uint32_t i) const
    {
        const CexNode &n = dag_.nodes[i];
        if (n.leaf && (n.node.kind != NodeKind::Pair || !n.succ.empty())) throw Error(ErrorKind::MalformedDag, "leaf is not a bad pair");
        if (!n.leaf && is_adversary_node(n.node.kind) && n.succ.size() != 1) {
            throw Error(ErrorKind::MalformedDag, "adversary node needs exactly one choice");
        }
        for (uint32_t c : n.succ) {
            if (c >= dag_.nodes.size() || dag_.nodes[c].rank >= n.rank) throw Error(ErrorKind::MalformedDag, "edge does not lower the rank");
        }
    }

    std::pair<StateId, uint32_t> component(StateId composite) const { return pr_.alt.pairs[composite]; }

    StateSet block_set(uint32_t b) const
    {
        StateSet r(g2_.num_states());
        for (StateId s : p_.members(b)) r.set(s);
        return r;
    }

    const StateSet &conc(uint32_t i) const { return dag_.nodes[i].conc; }

    // concrete members of the block that may take a and answer every
    // proponent successor inside the given pairs
    StateSet alt_answer(const SimNode &n, const std::vector<uint32_t> &pairs) const
    {
        auto [s1, b] = component(n.left);
        StateSet r(g2_.num_states());
        const auto a1 = acts_.to_g1[n.a], a2 = acts_.to_g2[n.a];
        std::vector<StateId> t1s;
        if (a1) t1s.assign(g1_.delta(s1, *a1).begin(), g1_.delta(s1, *a1).end());
        for (StateId s : p_.members(b)) {
            if (!a2 || !g2_.available(s, *a2)) {
                r.set(s);
                continue;
            }
            bool ok = true;
            for (StateId t1 : t1s) {
                for (StateId u : g2_.delta(s, *a2)) {
                    bool covered = false;
                    for (uint32_t c : pairs) {
                        auto [c1, cb] = component(dag_.nodes[c].node.left);
                        if (c1 == t1 && cb == p_.block_of(u) && conc(c).test(u)) {
                            covered = true;
                            break;
                        }
                    }
                    if (!covered) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) r.set(s);
        }
        return r;
    }

    // members of the block that offer action a and lie in `within`
    StateSet offering(const SimNode &n, ActionId a, const StateSet &within) const
    {
        auto [s1, b] = component(n.left);
        StateSet r(g2_.num_states());
        const auto a2 = acts_.to_g2[a];
        if (!a2) return r;
        for (StateId s : p_.members(b)) {
            if (g2_.available(s, *a2) && within.test(s)) r.set(s);
        }
        return r;
    }

    StateSet compute(const CexNode &x) const
    {
        const SimNode &n = x.node;
        auto [s1, b] = component(n.left);
        switch (n.kind) {
        case NodeKind::Pair: {
            if (x.leaf) return block_set(b);
            const CexNode &y = dag_.nodes[x.succ[0]];
            // skipped Player-2 gadget: the action choice happened here
            if (y.node.kind == NodeKind::AltStage2b) return offering(n, y.node.a, y.conc);
            return y.conc;
        }
        case NodeKind::SimStage2: {
            const CexNode &y = dag_.nodes[x.succ[0]];
            const StateId t1 = component(y.node.left).first;
            StateSet r(g2_.num_states());
            for (StateId s : p_.members(b)) {
                for (ActionId a1 : g1_.avail(s1)) {
                    auto d1 = g1_.delta(s1, a1);
                    if (!std::binary_search(d1.begin(), d1.end(), t1)) continue;
                    auto a2 = g2_.find_action(g1_.action_name(a1));
                    if (!a2 || !g2_.available(s, *a2)) continue;
                    bool hit = false;
                    for (StateId u : g2_.delta(s, *a2)) hit = hit || y.conc.test(u);
                    if (hit) {
                        r.set(s);
                        break;
                    }
                }
            }
            return r;
        }
        case NodeKind::SimStage1:
        case NodeKind::AltStage1: {
            StateSet r = block_set(b);
            for (uint32_t c : x.succ) {
                const CexNode &y = dag_.nodes[c];
                // skipped Player-1 gadget: the proponent answer leads straight to a pair
                if (n.kind == NodeKind::AltStage1 && y.node.kind == NodeKind::Pair) {
                    r &= alt_answer(n, {c});
                } else {
                    r &= y.conc;
                }
            }
            return r;
        }
        case NodeKind::AltStage2: {
            const CexNode &y = dag_.nodes[x.succ[0]];
            return offering(n, y.node.a, y.conc);
        }
        case NodeKind::AltStage2b: return dag_.nodes[x.succ[0]].conc;
        case NodeKind::AltStage1b: return alt_answer(n, x.succ);
        }
        throw Error(ErrorKind::MalformedDag, "unknown node kind");
    }

    CexDag &dag_;
    const Game &g1_, &g2_;
    const Partition &p_;
    const Premise &pr_;
    ActionMaps acts_;
};

// sorted (action, target block) pairs of s
std::vector<std::pair<ActionId, uint32_t>> one_step(const Game &g2, const Partition &p, StateId s)
{
    std::vector<std::pair<ActionId, uint32_t>> sig;
    for (ActionId a : g2.avail(s)) {
        for (StateId t : g2.delta(s, a)) sig.emplace_back(a, p.block_of(t));
    }
    std::sort(sig.begin(), sig.end());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    return sig;
}

}

void concretize(CexDag &dag, const Game &g1, const Game &g2, const Partition &p, const Premise &premise)
{
    Concretizer(dag, g1, g2, p, premise).run();
}

bool is_feasible(const CexDag &dag, const Game &g2)
{
    return !dag.nodes.empty() && dag.nodes[0].conc.test(g2.initial());
}

Partition refine(const Partition &p, const CexDag &dag, const Game &g2, const Premise &premise, bool improved)
{
    const size_t n = g2.num_states();
    std::vector<std::vector<uint32_t>> on_block(p.num_blocks());
    for (uint32_t i = 0; i < dag.nodes.size(); i++) on_block[premise.alt.pairs[dag.nodes[i].node.left].second].push_back(i);

    auto split = [&](auto signature) {
        std::map<std::pair<uint32_t, decltype(signature(0))>, uint32_t> ids;
        std::vector<uint32_t> b(n);
        for (StateId s = 0; s < n; s++) b[s] = ids.emplace(std::make_pair(p.block_of(s), signature(s)), (uint32_t)ids.size()).first->second;
        return Partition(std::move(b));
    };

    Partition q = split([&](StateId s) {
        std::vector<int> sig;
        bool outside = false;
        for (uint32_t i : on_block[p.block_of(s)]) {
            bool in = dag.nodes[i].conc.test(s);
            sig.push_back(in);
            outside = outside || !in;
        }
        // improved: also separate the states outside some set by their own behaviour
        if (improved && outside) {
            for (auto &[a, c] : one_step(g2, p, s)) {
                sig.push_back(2 + (int)a);
                sig.push_back((int)c);
            }
        }
        return sig;
    });
    if (q.num_blocks() > p.num_blocks()) return q;

    q = split([&](StateId s) {
        std::vector<std::pair<ActionId, uint32_t>> sig;
        if (!on_block[p.block_of(s)].empty()) sig = one_step(g2, p, s);
        return sig;
    });
    if (q.num_blocks() > p.num_blocks()) return q;
    throw Error(ErrorKind::NotRefinable, "the counterexample does not split any block");
}

const char *verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Refuted: return "refuted";
    case Verdict::Exhausted: return "exhausted";
    }
    return "?";
}

static CexRecord render(const CexDag &dag, const Premise &pr, const Game &g2, const Game &spec, size_t iter, size_t parts, bool feasible)
{
    CexRecord rec;
    rec.iteration = iter;
    rec.partition_size = parts;
    rec.feasible = feasible;
    const Game &left = pr.alt.game;
    for (auto &x : dag.nodes) {
        CexNodeView v;
        v.kind = node_kind_name(x.node.kind);
        v.left = left.state_name(x.node.left);
        v.right = spec.state_name(x.node.right);
        if (x.node.a != kNoAction) v.action = left.action_name(x.node.a);
        if (x.node.a2 != kNoAction) v.action2 = spec.action_name(x.node.a2);
        v.rank = x.rank;
        v.succ = x.succ;
        for (uint32_t s : x.conc.to_vector()) v.conc.push_back(g2.state_name(s));
        rec.nodes.push_back(std::move(v));
    }
    return rec;
}

CegarResult ag_cegar(const Game &g1, const Game &g2, const Game &spec, const CegarOptions &opt)
{
    auto start = std::chrono::steady_clock::now();
    CegarResult res;
    Partition p = coarsest_partition(g2);
    while (true) {
        if (res.iterations >= opt.max_iters) {
            res.verdict = Verdict::Exhausted;
            break;
        }
        res.iterations++;
        Premise pr = check_ag_premise(g1, g2, spec, p, opt.skip_step);
        res.peak_nodes = std::max(res.peak_nodes, pr.game.nodes.size());
        if (pr.holds) {
            res.verdict = Verdict::Holds;
            break;
        }
        CexDag dag = extract_cex(pr.game, pr.sol);
        concretize(dag, g1, g2, p, pr);
        bool feasible = is_feasible(dag, g2);
        if (opt.keep_cex) res.cex.push_back(render(dag, pr, g2, spec, res.iterations, p.num_blocks(), feasible));
        if (feasible) {
            res.verdict = Verdict::Refuted;
            break;
        }
        p = refine(p, dag, g2, pr, opt.improved_refine);
        res.refinements++;
    }
    res.partition_size = p.num_blocks();
    res.partition = std::move(p);
    res.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

CegarResult ag_cegar(const Mdp &m1, const Mdp &m2, const Mdp &spec, const CegarOptions &opt)
{
    return ag_cegar(mdp_to_game(m1), mdp_to_game(m2), mdp_to_game(spec), opt);
}

RelationCheck monolithic_check(const Game &g1, const Game &g2, const Game &spec, bool skip_step)
{
    return combined_simulates(compose_games(g1, g2), spec, skip_step);
}

}
