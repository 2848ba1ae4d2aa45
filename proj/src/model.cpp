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
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "combsim/model.hpp"

namespace combsim {

void normalize_labels(LabelSet &l)
{
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
}

LabelSet label_union(const LabelSet &a, const LabelSet &b)
{
    LabelSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

static std::vector<std::string> prop_universe(const std::vector<LabelSet> &labels, const std::vector<std::string> &declared)
{
    std::set<std::string> u(declared.begin(), declared.end());
    for (auto &l : labels) u.insert(l.begin(), l.end());
    return {u.begin(), u.end()};
}

/*
 * Game
 */

Game Game::from_parts(Parts parts, bool strict)
{
    const size_t n = parts.state_names.size();
    if (parts.labels.size() != n || parts.arena.num_nodes() != n) throw std::logic_error("Game::from_parts: size mismatch");
    if (n == 0 || parts.initial >= n) throw std::logic_error("Game::from_parts: bad initial state");

    const Arena &ar = parts.arena;
    for (StateId s = 0; s < n; s++) {
        uint32_t b = ar.moves_begin(s), e = ar.moves_end(s);
        if (strict && b == e) throw Error(ErrorKind::EmptyAvail, "state " + parts.state_names[s]);
        for (uint32_t m = b; m < e; m++) {
            if (ar.move_label[m] >= parts.action_names.size()) throw std::logic_error("Game::from_parts: bad action");
            if (m > b && ar.move_label[m - 1] >= ar.move_label[m]) throw std::logic_error("Game::from_parts: unsorted actions");
            auto ts = ar.move_targets(m);
            if (strict && ts.empty()) {
                throw Error(ErrorKind::EmptyDelta, "state " + parts.state_names[s] + ", action " + parts.action_names[ar.move_label[m]]);
            }
            for (size_t i = 0; i < ts.size(); i++) {
                if (ts[i] >= n) throw std::logic_error("Game::from_parts: bad target");
                if (i > 0 && ts[i - 1] >= ts[i]) throw std::logic_error("Game::from_parts: unsorted targets");
            }
        }
    }

    Game g;
    g.names_ = std::move(parts.state_names);
    g.actions_ = std::move(parts.action_names);
    g.labels_ = std::move(parts.labels);
    for (auto &l : g.labels_) normalize_labels(l);
    g.declared_ = std::move(parts.declared_props);
    normalize_labels(g.declared_);
    g.props_ = prop_universe(g.labels_, g.declared_);
    g.arena_ = std::move(parts.arena);
    g.initial_ = parts.initial;
    for (StateId s = 0; s < g.names_.size(); s++) g.state_index_.emplace(g.names_[s], s);
    for (ActionId a = 0; a < g.actions_.size(); a++) g.action_index_.emplace(g.actions_[a], a);
    return g;
}

bool Game::available(StateId s, ActionId a) const
{
    auto av = avail(s);
    return std::binary_search(av.begin(), av.end(), a);
}

std::span<const StateId> Game::delta(StateId s, ActionId a) const
{
    auto av = avail(s);
    auto it = std::lower_bound(av.begin(), av.end(), a);
    if (it == av.end() || *it != a) return {};
    return arena_.move_targets(arena_.move_begin[s] + (uint32_t)(it - av.begin()));
}

std::vector<StateId> Game::post(StateId s) const
{
    std::vector<StateId> r;
    for (uint32_t m = arena_.moves_begin(s); m < arena_.moves_end(s); m++) {
        auto ts = arena_.move_targets(m);
        r.insert(r.end(), ts.begin(), ts.end());
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

bool Game::has_label(StateId s, std::string_view p) const
{
    auto &l = labels_[s];
    return std::binary_search(l.begin(), l.end(), p, std::less<>());
}

bool Game::knows_prop(std::string_view p) const
{
    return std::binary_search(props_.begin(), props_.end(), p, std::less<>());
}

std::optional<StateId> Game::find_state(std::string_view id) const
{
    auto it = state_index_.find(std::string(id));
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ActionId> Game::find_action(std::string_view id) const
{
    auto it = action_index_.find(std::string(id));
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

/*
 * Validation of user input
 */

namespace {

struct ActionTable {
    std::vector<std::string> names;
    std::unordered_map<std::string, ActionId> index;
    bool closed = false;   // actions were declared up front

    void declare(const std::vector<std::string> &decl)
    {
        for (auto &a : decl) {
            if (a == kBottomAction) throw Error(ErrorKind::ReservedId, "action " + a);
            if (!index.emplace(a, (ActionId)names.size()).second) throw Error(ErrorKind::DuplicateId, "action " + a);
            names.push_back(a);
        }
        closed = !decl.empty();
    }

    ActionId use(const std::string &a)
    {
        if (a == kBottomAction) throw Error(ErrorKind::ReservedId, "action " + a);
        auto it = index.find(a);
        if (it != index.end()) return it->second;
        if (closed) throw Error(ErrorKind::DanglingReference, "undeclared action " + a);
        index.emplace(a, (ActionId)names.size());
        names.push_back(a);
        return (ActionId)names.size() - 1;
    }
};

std::unordered_map<std::string, StateId> index_states(const std::vector<std::string> &ids)
{
    std::unordered_map<std::string, StateId> idx;
    for (StateId s = 0; s < ids.size(); s++) {
        if (!idx.emplace(ids[s], s).second) throw Error(ErrorKind::DuplicateId, "state " + ids[s]);
    }
    return idx;
}

StateId lookup(const std::unordered_map<std::string, StateId> &idx, const std::string &id, const char *what)
{
    auto it = idx.find(id);
    if (it == idx.end()) throw Error(ErrorKind::DanglingReference, std::string(what) + " " + id);
    return it->second;
}

}

Game validate_game(const RawGame &raw)
{
    Game::Parts p;
    for (auto &st : raw.states) {
        p.state_names.push_back(st.id);
        p.labels.push_back(st.labels);
    }
    auto idx = index_states(p.state_names);
    ActionTable acts;
    acts.declare(raw.actions);

    const size_t n = p.state_names.size();
    std::vector<std::map<ActionId, std::vector<StateId>>> moves(n);
    for (auto &t : raw.transitions) {
        StateId from = lookup(idx, t.from, "state");
        ActionId a = acts.use(t.action);
        std::vector<StateId> to;
        for (auto &id : t.to) to.push_back(lookup(idx, id, "state"));
        std::sort(to.begin(), to.end());
        to.erase(std::unique(to.begin(), to.end()), to.end());
        if (to.empty()) throw Error(ErrorKind::EmptyDelta, "state " + t.from + ", action " + t.action);
        if (!moves[from].emplace(a, std::move(to)).second) {
            throw Error(ErrorKind::DuplicateId, "transition " + t.from + " --" + t.action + "->");
        }
    }
    for (StateId s = 0; s < n; s++) {
        if (moves[s].empty()) throw Error(ErrorKind::EmptyAvail, "state " + p.state_names[s]);
        p.arena.open_node();
        for (auto &[a, to] : moves[s]) p.arena.add_move(a, to);
    }
    if (n == 0) throw Error(ErrorKind::DanglingReference, "initial state " + raw.initial);
    p.initial = lookup(idx, raw.initial, "initial state");
    p.action_names = std::move(acts.names);
    for (auto &q : raw.propositions) p.declared_props.push_back(q);
    return Game::from_parts(std::move(p));
}

/*
 * Composition
 */

Composite compose_games_ex(const Game &g, const Game &h, const ComposeOptions &opt)
{
    Game::Parts p;
    p.action_names = g.action_names();
    std::vector<std::optional<ActionId>> g_to_h(g.num_actions());
    for (ActionId a = 0; a < g.num_actions(); a++) g_to_h[a] = h.find_action(g.action_name(a));
    for (auto &name : h.action_names()) {
        if (!g.find_action(name)) p.action_names.push_back(name);
    }
    p.declared_props = label_union(g.declared_props(), h.declared_props());

    Composite out;
    std::unordered_map<uint64_t, StateId> ids;
    auto key = [](StateId s, StateId t) { return ((uint64_t)s << 32) | t; };
    auto intern = [&](StateId s, StateId t) -> StateId {
        auto [it, fresh] = ids.emplace(key(s, t), (StateId)out.pairs.size());
        if (fresh) {
            if (opt.carrier != nullptr) throw std::logic_error("compose: successor outside carrier");
            out.pairs.emplace_back(s, t);
        }
        return it->second;
    };

    if (opt.carrier != nullptr) {
        for (auto &[s, t] : *opt.carrier) {
            if (!ids.emplace(key(s, t), (StateId)out.pairs.size()).second) throw std::logic_error("compose: duplicate carrier pair");
            out.pairs.emplace_back(s, t);
        }
        auto it = ids.find(key(g.initial(), h.initial()));
        if (it == ids.end()) throw std::logic_error("compose: carrier lacks the initial pair");
        p.initial = it->second;
    } else {
        intern(g.initial(), h.initial());
        p.initial = 0;
    }

    std::vector<StateId> targets;
    for (StateId v = 0; v < out.pairs.size(); v++) {
        auto [s, t] = out.pairs[v];
        p.state_names.push_back("(" + g.state_name(s) + "," + h.state_name(t) + ")");
        p.labels.push_back(label_union(g.labels(s), h.labels(t)));
        p.arena.open_node();
        bool any = false;
        for (ActionId a : g.avail(s)) {
            if (!g_to_h[a] || !h.available(t, *g_to_h[a])) continue;
            any = true;
            targets.clear();
            for (StateId s2 : g.delta(s, a)) {
                for (StateId t2 : h.delta(t, *g_to_h[a])) targets.push_back(intern(s2, t2));
            }
            std::sort(targets.begin(), targets.end());
            p.arena.add_move(a, targets);
        }
        if (!any && !opt.allow_empty_avail) {
            throw Error(ErrorKind::EmptyAvailInComposite, "state (" + g.state_name(s) + "," + h.state_name(t) + ")");
        }
    }
    out.game = Game::from_parts(std::move(p), !opt.allow_empty_avail);
    return out;
}

Game compose_games(const Game &g, const Game &h)
{
    return compose_games_ex(g, h, {}).game;
}

/*
 * Alternating games
 */

AlternatingGame AlternatingGame::validate(const Game &g)
{
    AlternatingGame ag;
    ag.players_.resize(g.num_states());
    for (StateId s = 0; s < g.num_states(); s++) {
        if (g.has_label(s, kTurnProp)) {
            for (ActionId a : g.avail(s)) {
                if (g.delta(s, a).size() != 1) {
                    throw Error(ErrorKind::NotAlternating, "Player-1 state " + g.state_name(s) + " has a nondeterministic action");
                }
            }
            ag.players_[s] = Player::One;
        } else {
            if (g.avail(s).size() != 1) {
                throw Error(ErrorKind::NotAlternating, "Player-2 state " + g.state_name(s) + " needs exactly one action");
            }
            ag.players_[s] = Player::Two;
        }
    }
    ag.game_ = g;
    return ag;
}

bool is_alternating(const Game &g)
{
    try {
        AlternatingGame::validate(g);
        return true;
    } catch (const Error &) {
        return false;
    }
}

/*
 * Rationals
 */

static int64_t narrow(__int128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorKind::InvalidDistribution, "probability overflow");
    return (int64_t)v;
}

Rational Rational::make(int64_t n, int64_t d)
{
    if (d == 0) throw Error(ErrorKind::InvalidDistribution, "zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return Rational{n / g, d / g};
}

Rational Rational::parse(std::string_view text)
{
    auto num_of = [&](std::string_view part) {
        int64_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || v < 0) {
            throw Error(ErrorKind::InvalidDistribution, "malformed probability '" + std::string(text) + "'");
        }
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return make(num_of(text), 1);
    return make(num_of(text.substr(0, slash)), num_of(text.substr(slash + 1)));
}

std::string Rational::str() const
{
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational &a, const Rational &b)
{
    __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
    __int128 d = (__int128)a.den * b.den;
    __int128 x = n < 0 ? -n : n, y = d;
    while (y != 0) {
        __int128 r = x % y;
        x = y;
        y = r;
    }
    if (x == 0) x = 1;
    return Rational::make(narrow(n / x), narrow(d / x));
}

Rational operator*(const Rational &a, const Rational &b)
{
    // cross-cancel first to keep the intermediates small
    int64_t g1 = std::gcd(a.num, b.den), g2 = std::gcd(b.num, a.den);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational::make(narrow((__int128)(a.num / g1) * (b.num / g2)), narrow((__int128)(a.den / g2) * (b.den / g1)));
}

/*
 * MDPs
 */

Mdp Mdp::from_parts(Parts parts)
{
    const size_t n = parts.state_names.size();
    if (parts.labels.size() != n || parts.roles.size() != n || parts.moves.size() != n || parts.dist.size() != n) {
        throw std::logic_error("Mdp::from_parts: size mismatch");
    }
    if (n == 0 || parts.initial >= n) throw std::logic_error("Mdp::from_parts: bad initial state");
    for (auto &l : parts.labels) normalize_labels(l);
    normalize_labels(parts.declared_props);
    Mdp m;
    m.props_ = prop_universe(parts.labels, parts.declared_props);
    m.p_ = std::move(parts);
    return m;
}

std::vector<StateId> Mdp::support(StateId s) const
{
    std::vector<StateId> r;
    for (auto &[t, pr] : p_.dist[s]) r.push_back(t);
    return r;
}

std::optional<StateId> Mdp::find_state(std::string_view id) const
{
    for (StateId s = 0; s < p_.state_names.size(); s++) {
        if (p_.state_names[s] == id) return s;
    }
    return std::nullopt;
}

bool Mdp::strictly_alternating() const
{
    for (StateId s = 0; s < num_states(); s++) {
        if (role(s) == MdpRole::Player1) {
            for (auto &[a, t] : moves(s)) if (role(t) != MdpRole::Prob) return false;
        } else {
            for (auto &[t, pr] : distribution(s)) if (role(t) != MdpRole::Player1) return false;
        }
    }
    return true;
}

Mdp validate_mdp(const RawMdp &raw)
{
    Mdp::Parts p;
    for (auto &st : raw.states) {
        p.state_names.push_back(st.id);
        p.labels.push_back(st.labels);
        p.roles.push_back(st.role);
    }
    auto idx = index_states(p.state_names);
    const size_t n = p.state_names.size();
    ActionTable acts;
    acts.declare(raw.actions);

    std::vector<std::map<ActionId, StateId>> moves(n);
    for (auto &mv : raw.moves) {
        StateId from = lookup(idx, mv.from, "state");
        if (p.roles[from] != MdpRole::Player1) throw Error(ErrorKind::RoleMismatch, "action move from probabilistic state " + mv.from);
        ActionId a = acts.use(mv.action);
        StateId to = lookup(idx, mv.to, "state");
        if (!moves[from].emplace(a, to).second) throw Error(ErrorKind::DuplicateId, "transition " + mv.from + " --" + mv.action + "->");
    }
    p.dist.resize(n);
    std::vector<bool> has_dist(n, false);
    for (auto &d : raw.dists) {
        StateId from = lookup(idx, d.from, "state");
        if (p.roles[from] != MdpRole::Prob) throw Error(ErrorKind::RoleMismatch, "distribution on Player-1 state " + d.from);
        if (has_dist[from]) throw Error(ErrorKind::DuplicateId, "second distribution for " + d.from);
        has_dist[from] = true;
        std::map<StateId, Rational> entries;
        Rational sum;
        for (auto &[id, pr] : d.dist) {
            StateId to = lookup(idx, id, "state");
            if (!entries.emplace(to, pr).second) throw Error(ErrorKind::DuplicateId, "distribution entry " + id + " of " + d.from);
            sum = sum + pr;
        }
        if (!sum.is_one()) throw Error(ErrorKind::InvalidDistribution, "distribution of " + d.from + " sums to " + sum.str());
        for (auto &[to, pr] : entries) {
            if (!pr.is_zero()) p.dist[from].emplace_back(to, pr);
        }
    }
    p.moves.resize(n);
    for (StateId s = 0; s < n; s++) {
        if (p.roles[s] == MdpRole::Player1) {
            if (moves[s].empty()) throw Error(ErrorKind::EmptyAvail, "state " + p.state_names[s]);
            p.moves[s].assign(moves[s].begin(), moves[s].end());
        } else if (!has_dist[s]) {
            throw Error(ErrorKind::EmptyDelta, "probabilistic state " + p.state_names[s] + " has no distribution");
        }
    }
    if (n == 0) throw Error(ErrorKind::DanglingReference, "initial state " + raw.initial);
    p.initial = lookup(idx, raw.initial, "initial state");
    p.action_names = std::move(acts.names);
    p.declared_props = raw.propositions;
    return Mdp::from_parts(std::move(p));
}

Mdp compose_mdps(const Mdp &m1, const Mdp &m2)
{
    if (!m1.strictly_alternating() || !m2.strictly_alternating()) {
        throw Error(ErrorKind::NotStrictlyAlternating, "composition needs strictly alternating MDPs");
    }
    if (m1.role(m1.initial()) != m2.role(m2.initial())) {
        throw Error(ErrorKind::NotStrictlyAlternating, "initial states have different roles");
    }

    Mdp::Parts p;
    p.action_names = m1.action_names();
    std::vector<std::optional<ActionId>> to2(m1.num_actions());
    for (ActionId a = 0; a < m1.num_actions(); a++) {
        for (ActionId b = 0; b < m2.num_actions(); b++) {
            if (m2.action_name(b) == m1.action_name(a)) to2[a] = b;
        }
    }
    for (auto &name : m2.action_names()) {
        if (std::find(p.action_names.begin(), p.action_names.end(), name) == p.action_names.end()) p.action_names.push_back(name);
    }
    p.declared_props = label_union(m1.declared_props(), m2.declared_props());

    std::vector<std::pair<StateId, StateId>> pairs;
    std::unordered_map<uint64_t, StateId> ids;
    auto intern = [&](StateId s, StateId t) {
        auto [it, fresh] = ids.emplace(((uint64_t)s << 32) | t, (StateId)pairs.size());
        if (fresh) pairs.emplace_back(s, t);
        return it->second;
    };
    intern(m1.initial(), m2.initial());
    p.initial = 0;

    for (StateId v = 0; v < pairs.size(); v++) {
        auto [s, t] = pairs[v];
        p.state_names.push_back("(" + m1.state_name(s) + "," + m2.state_name(t) + ")");
        p.labels.push_back(label_union(m1.labels(s), m2.labels(t)));
        p.roles.push_back(m1.role(s));
        p.moves.emplace_back();
        p.dist.emplace_back();
        if (m1.role(s) == MdpRole::Player1) {
            for (auto &[a, s2] : m1.moves(s)) {
                if (!to2[a]) continue;
                for (auto &[b, t2] : m2.moves(t)) {
                    if (b == *to2[a]) p.moves[v].emplace_back(a, intern(s2, t2));
                }
            }
            if (p.moves[v].empty()) throw Error(ErrorKind::EmptyAvailInComposite, "state " + p.state_names[v]);
        } else {
            std::vector<std::pair<StateId, Rational>> d;
            for (auto &[s2, pr] : m1.distribution(s)) {
                for (auto &[t2, qr] : m2.distribution(t)) d.emplace_back(intern(s2, t2), pr * qr);
            }
            std::sort(d.begin(), d.end(), [](auto &x, auto &y) { return x.first < y.first; });
            p.dist[v] = std::move(d);
        }
    }
    return Mdp::from_parts(std::move(p));
}

Game mdp_to_game(const Mdp &m)
{
    Game::Parts p;
    p.action_names = m.action_names();
    const ActionId bottom = (ActionId)p.action_names.size();
    p.action_names.emplace_back(kBottomAction);
    p.declared_props = m.declared_props();
    p.declared_props.emplace_back(kTurnProp);
    p.initial = m.initial();
    for (StateId s = 0; s < m.num_states(); s++) {
        p.state_names.push_back(m.state_name(s));
        LabelSet l = m.labels(s);
        p.arena.open_node();
        if (m.role(s) == MdpRole::Player1) {
            l.emplace_back(kTurnProp);
            for (auto &[a, t] : m.moves(s)) p.arena.add_move(a, std::span<const StateId>(&t, 1));
        } else {
            p.arena.add_move(bottom, m.support(s));
        }
        normalize_labels(l);
        p.labels.push_back(std::move(l));
    }
    return Game::from_parts(std::move(p));
}

}
