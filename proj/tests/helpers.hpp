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

#ifndef COMBSIM_TEST_HELPERS_HPP
#define COMBSIM_TEST_HELPERS_HPP

#include <sstream>
#include <string>

#include "combsim/model.hpp"

namespace testing {

// Compact game notation for fixtures:
//   states "s0:p,q s1 s2:p"   (first state is initial)
//   moves  "s0 a s1 s2; s1 b s0"
inline combsim::Game game(const std::string &states, const std::string &moves)
{
    combsim::RawGame raw;
    std::istringstream ss(states);
    std::string tok;
    while (ss >> tok) {
        combsim::RawState st;
        auto colon = tok.find(':');
        st.id = tok.substr(0, colon);
        if (colon != std::string::npos) {
            std::istringstream ls(tok.substr(colon + 1));
            std::string p;
            while (std::getline(ls, p, ',')) st.labels.push_back(p);
        }
        raw.states.push_back(st);
    }
    raw.initial = raw.states.at(0).id;
    std::istringstream ms(moves);
    std::string clause;
    while (std::getline(ms, clause, ';')) {
        std::istringstream cs(clause);
        combsim::RawTransition t;
        if (!(cs >> t.from >> t.action)) continue;
        while (cs >> tok) t.to.push_back(tok);
        raw.transitions.push_back(t);
    }
    return combsim::validate_game(raw);
}

}

#endif
