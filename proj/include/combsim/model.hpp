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

#ifndef COMBSIM_MODEL_HPP
#define COMBSIM_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "combsim/error.hpp"

namespace combsim {

using StateId = uint32_t;
using ActionId = uint32_t;

// reserved action of probabilistic states after mdp_to_game; rejected in input
inline constexpr std::string_view kBottomAction = "⊥";
// proposition marking Player-1 states of an alternating game
inline constexpr std::string_view kTurnProp = "turn";

using LabelSet = std::vector<std::string>;   // sorted, no duplicates

void normalize_labels(LabelSet &l);
LabelSet label_union(const LabelSet &a, const LabelSet &b);

/**
 * Compressed move structure. Node v owns moves [move_begin[v], move_begin[v+1]),
 * move m carries a label and targets [target_begin[m], target_begin[m+1]).
 * Used both for games (label = action) and for solver arenas.
 */
struct Arena {
    std::vector<uint32_t> move_begin{0};
    std::vector<uint32_t> move_label;
    std::vector<uint32_t> target_begin{0};
    std::vector<uint32_t> targets;

    size_t num_nodes() const { return move_begin.size() - 1; }
    size_t num_moves() const { return move_label.size(); }

    uint32_t moves_begin(uint32_t v) const { return move_begin[v]; }
    uint32_t moves_end(uint32_t v) const { return move_begin[v + 1]; }
    std::span<const uint32_t> move_targets(uint32_t m) const
    {
        return {targets.data() + target_begin[m], target_begin[m + 1] - target_begin[m]};
    }

    // nodes must be opened in index order; moves go to the last opened node
    uint32_t open_node()
    {
        move_begin.push_back(move_begin.back());
        return (uint32_t)num_nodes() - 1;
    }
    void add_move(uint32_t label, std::span<const uint32_t> ts)
    {
        move_label.push_back(label);
        targets.insert(targets.end(), ts.begin(), ts.end());
        target_begin.push_back((uint32_t)targets.size());
        move_begin.back()++;
    }
};

/**
 * Two-player game: Player 1 picks an available action, Player 2 picks a
 * successor from delta(s, a). States and actions are dense indices; the
 * string ids are kept for I/O.
 */
class Game
{
public:
    struct Parts {
        std::vector<std::string> state_names;
        std::vector<std::string> action_names;
        std::vector<LabelSet> labels;
        std::vector<std::string> declared_props;
        Arena arena;   // one node per state, move labels are action ids (ascending per state)
        StateId initial = 0;
    };

    Game() = default;

    /**
     * Takes ownership of prebuilt parts. With strict set, every state needs
     * an action and every action a successor; derived games (abstractions,
     * composites over an abstract carrier) may be built non-strict.
     */
    static Game from_parts(Parts parts, bool strict = true);

    size_t num_states() const { return names_.size(); }
    size_t num_actions() const { return actions_.size(); }
    StateId initial() const { return initial_; }

    std::span<const ActionId> avail(StateId s) const
    {
        return {arena_.move_label.data() + arena_.move_begin[s], arena_.move_begin[s + 1] - arena_.move_begin[s]};
    }
    bool available(StateId s, ActionId a) const;
    // empty when a is not available at s
    std::span<const StateId> delta(StateId s, ActionId a) const;
    // all successors of s over every action, ascending
    std::vector<StateId> post(StateId s) const;

    const LabelSet &labels(StateId s) const { return labels_[s]; }
    bool has_label(StateId s, std::string_view p) const;
    // sorted union of all state labels and declared propositions
    const std::vector<std::string> &propositions() const { return props_; }
    bool knows_prop(std::string_view p) const;

    const std::string &state_name(StateId s) const { return names_[s]; }
    const std::string &action_name(ActionId a) const { return actions_[a]; }
    const std::vector<std::string> &state_names() const { return names_; }
    const std::vector<std::string> &action_names() const { return actions_; }
    const std::vector<std::string> &declared_props() const { return declared_; }
    std::optional<StateId> find_state(std::string_view id) const;
    std::optional<ActionId> find_action(std::string_view id) const;

    const Arena &arena() const { return arena_; }

private:
    std::vector<std::string> names_;
    std::vector<std::string> actions_;
    std::vector<LabelSet> labels_;
    std::vector<std::string> declared_;
    std::vector<std::string> props_;
    Arena arena_;
    StateId initial_ = 0;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, ActionId> action_index_;
};

struct RawState {
    std::string id;
    LabelSet labels;
};

struct RawTransition {
    std::string from;
    std::string action;
    std::vector<std::string> to;
};

/**
 * Game as written by a user, with string references.
 * actions/propositions are optional declarations; actions used by
 * transitions are appended in order of first use.
 */
struct RawGame {
    std::vector<RawState> states;
    std::vector<RawTransition> transitions;
    std::string initial;
    std::vector<std::string> actions;
    std::vector<std::string> propositions;
};

Game validate_game(const RawGame &raw);

/**
 * Synchronous product restricted to pairs reachable from the initial pair.
 * Actions are matched by name, labels are united.
 */
Game compose_games(const Game &g, const Game &h);

struct ComposeOptions {
    // keep reachable pairs whose intersected availability is empty as deadlocks
    bool allow_empty_avail = false;
    // build exactly these pairs instead of the reachable ones; every
    // successor must be in the list
    const std::vector<std::pair<StateId, StateId>> *carrier = nullptr;
};

struct Composite {
    Game game;
    std::vector<std::pair<StateId, StateId>> pairs;   // component states per composite state
};

Composite compose_games_ex(const Game &g, const Game &h, const ComposeOptions &opt);

enum class Player : uint8_t { One, Two };

/**
 * Game in which Player-2 states have exactly one action and Player-1
 * states have singleton successor sets. The turn proposition marks
 * Player-1 states.
 */
class AlternatingGame
{
public:
    static AlternatingGame validate(const Game &g);

    const Game &game() const { return game_; }
    Player player(StateId s) const { return players_[s]; }

private:
    Game game_;
    std::vector<Player> players_;
};

bool is_alternating(const Game &g);

/**
 * Exact nonnegative fraction in lowest terms.
 */
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    static Rational make(int64_t n, int64_t d);
    // "n/d" or "n"; throws Error(InvalidDistribution) on malformed text
    static Rational parse(std::string_view text);
    std::string str() const;

    friend Rational operator+(const Rational &a, const Rational &b);
    friend Rational operator*(const Rational &a, const Rational &b);
    friend bool operator==(const Rational &a, const Rational &b) { return a.num == b.num && a.den == b.den; }
    bool is_zero() const { return num == 0; }
    bool is_one() const { return num == den; }
};

enum class MdpRole : uint8_t { Player1, Prob };

/**
 * Turn-based MDP. Player-1 states map actions to one successor, probabilistic
 * states carry a distribution whose support excludes zero entries.
 */
class Mdp
{
public:
    struct Parts {
        std::vector<std::string> state_names;
        std::vector<std::string> action_names;
        std::vector<LabelSet> labels;
        std::vector<std::string> declared_props;
        std::vector<MdpRole> roles;
        // per state: (action, target) ascending by action for Player-1 states,
        // (target, probability) ascending by target for probabilistic states
        std::vector<std::vector<std::pair<ActionId, StateId>>> moves;
        std::vector<std::vector<std::pair<StateId, Rational>>> dist;
        StateId initial = 0;
    };

    static Mdp from_parts(Parts parts);

    size_t num_states() const { return p_.state_names.size(); }
    size_t num_actions() const { return p_.action_names.size(); }
    StateId initial() const { return p_.initial; }
    MdpRole role(StateId s) const { return p_.roles[s]; }
    const std::vector<std::pair<ActionId, StateId>> &moves(StateId s) const { return p_.moves[s]; }
    const std::vector<std::pair<StateId, Rational>> &distribution(StateId s) const { return p_.dist[s]; }
    std::vector<StateId> support(StateId s) const;

    const LabelSet &labels(StateId s) const { return p_.labels[s]; }
    const std::vector<std::string> &propositions() const { return props_; }
    const std::string &state_name(StateId s) const { return p_.state_names[s]; }
    const std::string &action_name(ActionId a) const { return p_.action_names[a]; }
    const std::vector<std::string> &state_names() const { return p_.state_names; }
    const std::vector<std::string> &action_names() const { return p_.action_names; }
    const std::vector<std::string> &declared_props() const { return p_.declared_props; }
    std::optional<StateId> find_state(std::string_view id) const;
    bool strictly_alternating() const;

private:
    Parts p_;
    std::vector<std::string> props_;
};

struct RawMdpState {
    std::string id;
    LabelSet labels;
    MdpRole role = MdpRole::Player1;
};

struct RawMdpMove {
    std::string from;
    std::string action;
    std::string to;
};

struct RawMdpDist {
    std::string from;
    std::vector<std::pair<std::string, Rational>> dist;
};

struct RawMdp {
    std::vector<RawMdpState> states;
    std::vector<RawMdpMove> moves;
    std::vector<RawMdpDist> dists;
    std::string initial;
    std::vector<std::string> actions;
    std::vector<std::string> propositions;
};

Mdp validate_mdp(const RawMdp &raw);

/**
 * Product of two strictly alternating MDPs over reachable pairs.
 * Distributions multiply, Player-1 availability intersects.
 */
Mdp compose_mdps(const Mdp &m1, const Mdp &m2);

/**
 * Game view of an MDP: probabilistic states get the single action bottom
 * with the support as successors, Player-1 states get the turn label.
 * State indices are preserved; bottom is the last action.
 */
Game mdp_to_game(const Mdp &m);

}

#endif
