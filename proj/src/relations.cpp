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

#include "combsim/relations.hpp"

namespace combsim {

const char *node_kind_name(NodeKind k)
{
    switch (k) {
    case NodeKind::Pair: return "Pair";
    case NodeKind::SimStage2: return "SimStage2";
    case NodeKind::SimStage1: return "SimStage1";
    case NodeKind::AltStage2: return "AltStage2";
    case NodeKind::AltStage1: return "AltStage1";
    case NodeKind::AltStage2b: return "AltStage2b";
    case NodeKind::AltStage1b: return "AltStage1b";
    }
    return "?";
}

bool is_adversary_node(NodeKind k)
{
    return k == NodeKind::Pair || k == NodeKind::SimStage2 || k == NodeKind::AltStage2 || k == NodeKind::AltStage2b;
}

std::pair<std::vector<uint32_t>, std::vector<uint32_t>> label_classes(const Game &g, const Game &h)
{
    std::map<LabelSet, uint32_t> cls;
    auto classify = [&](const Game &x) {
        std::vector<uint32_t> r(x.num_states());
        for (StateId s = 0; s < x.num_states(); s++) r[s] = cls.emplace(x.labels(s), (uint32_t)cls.size()).first->second;
        return r;
    };
    auto a = classify(g);
    auto b = classify(h);
    return {std::move(a), std::move(b)};
}

uint32_t SimGame::pair_node(StateId s, StateId t) const
{
    return pair_index[(size_t)s * right_size + t];
}

namespace {

/*
 * Nodes are numbered in discovery order and expanded in that order, so the
 * arena can be written sequentially. Node keys map to a dense slot number;
 * small slot spaces use a flat table, large ones a hash map.
 */
class Builder
{
public:
    Builder(const Game &g_alt, const Game &g_sim, const Game &h, const SimGameOptions &opt)
        : ga_(g_alt), gs_(g_sim), h_(h), opt_(opt)
    {
        auto [lc, rc] = label_classes(ga_, h_);
        lcls_ = std::move(lc);
        rcls_ = std::move(rc);
        nl_ = ga_.num_states();
        nr_ = h_.num_states();
        ml_ = std::max<size_t>(ga_.num_actions(), 1);
        mr_ = std::max<size_t>(h_.num_actions(), 1);
        const uint64_t np = (uint64_t)nl_ * nr_;
        base_alt1_ = 4 * np;
        base_alt2b_ = base_alt1_ + np * ml_;
        base_alt1b_ = base_alt2b_ + np * ml_ * mr_;
        const uint64_t slots = base_alt1b_ + np * ml_ * mr_;
        if (slots <= (uint64_t(1) << 24)) flat_.assign(slots, kNoChoice);

        post_sim_.resize(nl_);
        for (StateId s = 0; s < nl_; s++) post_sim_[s] = gs_.post(s);
        post_r_.resize(nr_);
        for (StateId t = 0; t < nr_; t++) post_r_[t] = h_.post(t);
    }

    SimGame run()
    {
        out_.left_size = nl_;
        out_.right_size = nr_;
        out_.pair_index.assign(nl_ * nr_, kNoChoice);
        if (opt_.from_initial) {
            out_.initial_pair = intern({NodeKind::Pair, ga_.initial(), h_.initial()});
        } else {
            for (StateId s = 0; s < nl_; s++) {
                for (StateId t = 0; t < nr_; t++) intern({NodeKind::Pair, s, t});
            }
            out_.initial_pair = out_.pair_node(ga_.initial(), h_.initial());
        }
        for (uint32_t v = 0; v < out_.nodes.size(); v++) expand(v);
        out_.bad = StateSet(out_.nodes.size());
        for (uint32_t v : bad_) out_.bad.set(v);
        return std::move(out_);
    }

private:
    uint64_t slot(const SimNode &n) const
    {
        const uint64_t p = (uint64_t)n.left * nr_ + n.right;
        const uint64_t np = (uint64_t)nl_ * nr_;
        switch (n.kind) {
        case NodeKind::Pair: return p;
        case NodeKind::SimStage2: return np + p;
        case NodeKind::SimStage1: return 2 * np + p;
        case NodeKind::AltStage2: return 3 * np + p;
        case NodeKind::AltStage1: return base_alt1_ + p * ml_ + n.a;
        case NodeKind::AltStage2b: return base_alt2b_ + (p * ml_ + n.a) * mr_ + n.a2;
        case NodeKind::AltStage1b: return base_alt1b_ + (p * ml_ + n.a) * mr_ + n.a2;
        }
        return 0;
    }

    uint32_t intern(const SimNode &n)
    {
        const uint64_t k = slot(n);
        uint32_t *cell;
        if (!flat_.empty()) {
            cell = &flat_[k];
        } else {
            cell = &hashed_.try_emplace(k, kNoChoice).first->second;
        }
        if (*cell == kNoChoice) {
            *cell = (uint32_t)out_.nodes.size();
            out_.nodes.push_back(n);
            if (n.kind == NodeKind::Pair) out_.pair_index[(size_t)n.left * nr_ + n.right] = *cell;
        }
        return *cell;
    }

    void one_move(std::vector<uint32_t> &ts)
    {
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        out_.arena.add_move(0, ts);
    }

    void expand(uint32_t v)
    {
        const SimNode n = out_.nodes[v];
        Arena &ar = out_.arena;
        ar.open_node();
        std::vector<uint32_t> ts;
        switch (n.kind) {
        case NodeKind::Pair: {
            if (lcls_[n.left] != rcls_[n.right]) {
                bad_.push_back(v);
                return;
            }
            if (opt_.alt_gadget) {
                auto av = ga_.avail(n.left);
                auto av2 = h_.avail(n.right);
                if (opt_.skip_step && av.size() == 1 && av2.size() == 1) {
                    ts.push_back(intern({NodeKind::AltStage2b, n.left, n.right, av[0], av2[0]}));
                    out_.skipped++;
                } else {
                    ts.push_back(intern({NodeKind::AltStage2, n.left, n.right}));
                }
            }
            if (opt_.sim_gadget) ts.push_back(intern({NodeKind::SimStage2, n.left, n.right}));
            one_move(ts);
            break;
        }
        case NodeKind::SimStage2:
            for (StateId t : post_sim_[n.left]) ts.push_back(intern({NodeKind::SimStage1, t, n.right}));
            one_move(ts);
            break;
        case NodeKind::SimStage1:
            for (StateId t2 : post_r_[n.right]) {
                uint32_t w = intern({NodeKind::Pair, n.left, t2});
                ar.add_move(t2, std::span<const uint32_t>(&w, 1));
            }
            break;
        case NodeKind::AltStage2:
            for (ActionId a : ga_.avail(n.left)) ts.push_back(intern({NodeKind::AltStage1, n.left, n.right, a}));
            one_move(ts);
            break;
        case NodeKind::AltStage1: {
            auto d = ga_.delta(n.left, n.a);
            for (ActionId a2 : h_.avail(n.right)) {
                auto d2 = h_.delta(n.right, a2);
                uint32_t w;
                if (opt_.skip_step && d.size() == 1 && d2.size() == 1) {
                    w = intern({NodeKind::Pair, d[0], d2[0]});
                    out_.skipped++;
                } else {
                    w = intern({NodeKind::AltStage2b, n.left, n.right, n.a, a2});
                }
                ar.add_move(a2, std::span<const uint32_t>(&w, 1));
            }
            break;
        }
        case NodeKind::AltStage2b:
            for (StateId t2 : h_.delta(n.right, n.a2)) ts.push_back(intern({NodeKind::AltStage1b, n.left, t2, n.a, n.a2}));
            one_move(ts);
            break;
        case NodeKind::AltStage1b:
            for (StateId t : ga_.delta(n.left, n.a)) {
                uint32_t w = intern({NodeKind::Pair, t, n.right});
                ar.add_move(t, std::span<const uint32_t>(&w, 1));
            }
            break;
        }
    }

    const Game &ga_, &gs_, &h_;
    SimGameOptions opt_;
    std::vector<uint32_t> lcls_, rcls_;
    size_t nl_, nr_, ml_, mr_;
    uint64_t base_alt1_, base_alt2b_, base_alt1b_;
    std::vector<uint32_t> flat_;
    std::unordered_map<uint64_t, uint32_t> hashed_;
    std::vector<std::vector<StateId>> post_sim_, post_r_;
    std::vector<uint32_t> bad_;
    SimGame out_;
};

}

SimGame build_combined_game(const Game &g, const Game &h, const SimGameOptions &opt)
{
    return Builder(g, g, h, opt).run();
}

SimGame build_modified_game(const Game &g_alt, const Game &g_sim, const Game &h, const SimGameOptions &opt)
{
    if (g_alt.num_states() != g_sim.num_states() || g_alt.initial() != g_sim.initial() ||
        g_alt.action_names() != g_sim.action_names()) {
        throw Error(ErrorKind::MismatchedCarriers, "state space, actions or initial state differ");
    }
    for (StateId s = 0; s < g_alt.num_states(); s++) {
        if (g_alt.state_name(s) != g_sim.state_name(s) || g_alt.labels(s) != g_sim.labels(s)) {
            throw Error(ErrorKind::MismatchedCarriers, "state " + g_alt.state_name(s) + " differs");
        }
    }
    return Builder(g_alt, g_sim, h, opt).run();
}

/*
 * RelationMatrix
 */

size_t RelationMatrix::count() const
{
    size_t c = 0;
    for (auto &r : rows_) c += r.count();
    return c;
}

std::vector<std::pair<StateId, StateId>> RelationMatrix::pairs() const
{
    std::vector<std::pair<StateId, StateId>> r;
    for (StateId s = 0; s < rows_.size(); s++) {
        for (uint32_t t : rows_[s].to_vector()) r.emplace_back(s, t);
    }
    return r;
}

bool RelationMatrix::subset_of(const RelationMatrix &o) const
{
    if (o.left_size() != left_size() || o.right_ != right_) return false;
    for (size_t s = 0; s < rows_.size(); s++) if (!rows_[s].subset_of(o.rows_[s])) return false;
    return true;
}

bool RelationMatrix::operator==(const RelationMatrix &o) const
{
    return right_ == o.right_ && rows_ == o.rows_;
}

RelationMatrix RelationMatrix::intersect(const RelationMatrix &o) const
{
    RelationMatrix r = *this;
    for (size_t s = 0; s < rows_.size(); s++) r.rows_[s] &= o.rows_[s];
    return r;
}

RelationMatrix RelationMatrix::compose(const RelationMatrix &o) const
{
    RelationMatrix r(left_size(), o.right_size());
    for (size_t s = 0; s < rows_.size(); s++) {
        for (uint32_t t : rows_[s].to_vector()) r.rows_[s] |= o.rows_[t];
    }
    return r;
}

RelationMatrix relation_from_game(const SimGame &game, const SolveResult &sol)
{
    RelationMatrix r(game.left_size, game.right_size);
    for (StateId s = 0; s < game.left_size; s++) {
        for (StateId t = 0; t < game.right_size; t++) {
            uint32_t v = game.pair_node(s, t);
            if (v != kNoChoice && sol.proponent_win.test(v)) r.set(s, t);
        }
    }
    return r;
}

RelationMatrix max_combined_simulation(const Game &g, const Game &h, bool skip_step, size_t *nodes)
{
    SimGameOptions opt;
    opt.skip_step = skip_step;
    SimGame game = build_combined_game(g, h, opt);
    if (nodes != nullptr) *nodes = game.nodes.size();
    SolveResult sol = solve_safety({game.arena, game.bad});
    return relation_from_game(game, sol);
}

RelationCheck combined_simulates(const Game &g, const Game &h, bool skip_step)
{
    SimGameOptions opt;
    opt.skip_step = skip_step;
    opt.from_initial = true;
    SimGame game = build_combined_game(g, h, opt);
    SolveResult sol = solve_safety({game.arena, game.bad});
    return {sol.proponent_win.test(game.initial_pair), game.nodes.size()};
}

/*
 * Refinement from the label-equivalence relation. A pair is dropped as
 * soon as it fails a step condition against the current relation.
 */
static RelationMatrix refine(const Game &g, const Game &h, bool sim, bool alt, size_t *rounds)
{
    const size_t nl = g.num_states(), nr = h.num_states();
    auto [lc, rc] = label_classes(g, h);
    RelationMatrix r(nl, nr);
    for (StateId s = 0; s < nl; s++) {
        for (StateId t = 0; t < nr; t++) if (lc[s] == rc[t]) r.set(s, t);
    }

    std::vector<StateSet> post_r(nr, StateSet(nr));
    std::vector<std::vector<StateSet>> delta_r(nr);
    for (StateId t = 0; t < nr; t++) {
        for (ActionId a2 : h.avail(t)) {
            StateSet d(nr);
            for (StateId u : h.delta(t, a2)) d.set(u);
            post_r[t] |= d;
            delta_r[t].push_back(std::move(d));
        }
    }
    std::vector<std::vector<StateId>> post_l(nl);
    for (StateId s = 0; s < nl; s++) post_l[s] = g.post(s);

    size_t passes = 0;
    bool changed = true;
    std::vector<StateSet> reach;
    while (changed) {
        changed = false;
        passes++;
        for (StateId s = 0; s < nl; s++) {
            if (r.row(s).none()) continue;
            // union of related rows per left action
            reach.clear();
            if (alt) {
                for (ActionId a : g.avail(s)) {
                    StateSet u(nr);
                    for (StateId t : g.delta(s, a)) u |= r.row(t);
                    reach.push_back(std::move(u));
                }
            }
            for (uint32_t t : r.row(s).to_vector()) {
                bool ok = true;
                if (sim) {
                    for (StateId u : post_l[s]) {
                        if (!post_r[t].intersects(r.row(u))) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (ok && alt) {
                    for (auto &u : reach) {
                        bool matched = false;
                        for (auto &d : delta_r[t]) {
                            if (d.subset_of(u)) {
                                matched = true;
                                break;
                            }
                        }
                        if (!matched) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) {
                    r.set(s, t, false);
                    changed = true;
                }
            }
        }
    }
    if (rounds != nullptr) *rounds = passes;
    return r;
}

RelationMatrix max_simulation(const Game &g, const Game &h, size_t *rounds)
{
    return refine(g, h, true, false, rounds);
}

RelationMatrix max_alternating_simulation(const Game &g, const Game &h, size_t *rounds)
{
    return refine(g, h, false, true, rounds);
}

RelationMatrix max_combined_simulation_refinement(const Game &g, const Game &h, size_t *rounds)
{
    return refine(g, h, true, true, rounds);
}

}
