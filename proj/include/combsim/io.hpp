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

#ifndef COMBSIM_IO_HPP
#define COMBSIM_IO_HPP

#include <string>
#include <string_view>
#include <variant>

#include "combsim/cegar.hpp"
#include "combsim/model.hpp"

namespace combsim {

using Model = std::variant<Game, Mdp>;

/**
 * JSON model file:
 *   {"kind": "game" | "mdp",
 *    "states": [{"id": .., "labels": [..], "role": "player1" | "prob"}],
 *    "transitions": [..], "initial": ..,
 *    "actions": [..], "propositions": [..]}          (last two optional)
 * Game transitions are {"from", "action", "to": [ids]}. MDP transitions
 * are {"from", "action", "to": id} or {"from", "dist": {id: "n/d"}}.
 * role is only read for MDPs.
 */
Model parse_model(std::string_view text);
Model load_model(const std::string &path);

// the model as a game; MDPs go through mdp_to_game
Game as_game(const Model &m);

/**
 * Canonical form: states sorted by id, transitions by (from, action),
 * labels and successor lists sorted, two-space indentation.
 */
std::string serialize_game(const Game &g);
std::string serialize_mdp(const Mdp &m);
std::string serialize_model(const Model &m);

std::string stats_json(const CegarResult &r, bool timing);
std::string cex_json(const CegarResult &r);

}

#endif
