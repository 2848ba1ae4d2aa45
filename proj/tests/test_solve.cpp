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

#include <doctest.h>

#include "combsim/random.hpp"
#include "combsim/solve.hpp"
#include "oracles.hpp"

using namespace combsim;

namespace {

Arena random_arena(Rng &rng, uint32_t n)
{
    Arena ar;
    for (uint32_t v = 0; v < n; v++) {
        ar.open_node();
        uint32_t moves = draw(rng, 4);   // zero moves allowed
        for (uint32_t m = 0; m < moves; m++) {
            std::vector<uint32_t> ts;
            uint32_t k = draw(rng, 4);   // empty target lists allowed
            for (uint32_t i = 0; i < k; i++) ts.push_back(draw(rng, n));
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            ar.add_move(m, ts);
        }
    }
    return ar;
}

}

TEST_SUITE("solve") {

TEST_CASE("ranks match the round-based attractor")
{
    Rng rng(21);
    for (int iter = 0; iter < 400; iter++) {
        uint32_t n = 1 + draw(rng, 40);
        Arena ar = random_arena(rng, n);
        StateSet bad(n);
        oracle::Bits bad_bits(n);
        for (uint32_t v = 0; v < n; v++) {
            if (draw(rng, 5) == 0) {
                bad.set(v);
                bad_bits[v] = true;
            }
        }
        SolveResult r = solve_safety({ar, bad});
        auto expect = oracle::attractor_rounds(ar, bad_bits);
        REQUIRE(r.rank == expect);
        CHECK((r.proponent_win | r.adversary_win) == StateSet(n, true));
        CHECK_FALSE(r.proponent_win.intersects(r.adversary_win));

        for (uint32_t v = 0; v < n; v++) {
            if (r.proponent_win.test(v)) {
                // the chosen move keeps every target safe
                uint32_t m = r.proponent_strategy[v];
                REQUIRE(m != kNoChoice);
                REQUIRE(m >= ar.moves_begin(v));
                REQUIRE(m < ar.moves_end(v));
                for (uint32_t t : ar.move_targets(m)) CHECK(r.proponent_win.test(t));
            } else if (!bad.test(v)) {
                // every adversary answer lowers the rank
                for (uint32_t m = ar.moves_begin(v); m < ar.moves_end(v); m++) {
                    uint32_t t = r.adversary_strategy[m];
                    REQUIRE(t != kNoChoice);
                    CHECK(r.rank[t] < r.rank[v]);
                }
            }
        }
    }
}

TEST_CASE("dead ends and empty moves")
{
    Arena ar;
    ar.open_node();   // 0: no moves, lost
    ar.open_node();   // 1: one move with no targets, safe
    ar.add_move(0, {});
    ar.open_node();   // 2: must go to 0
    std::vector<uint32_t> to0{0};
    ar.add_move(0, to0);
    SolveResult r = solve_safety({ar, StateSet(3)});
    CHECK(r.rank[0] == 1);
    CHECK(r.proponent_win.test(1));
    CHECK(r.rank[2] == 2);
}

TEST_CASE("predecessor operators")
{
    Arena ar;
    ar.open_node();
    std::vector<uint32_t> a{1, 2}, b{2};
    ar.add_move(0, a);
    ar.add_move(1, b);
    ar.open_node();
    ar.add_move(0, b);
    ar.open_node();
    StateSet x(3);
    x.set(1);
    CHECK(pre_exists_forall(ar, x).none());
    CHECK(pre_exists_exists(ar, x).to_vector() == std::vector<uint32_t>{0});
    CHECK(pre_forall_exists(ar, x).to_vector() == std::vector<uint32_t>{2});
    x.set(2);
    CHECK(pre_exists_forall(ar, x).to_vector() == std::vector<uint32_t>{0, 1});
    CHECK(pre_forall_forall(ar, x).to_vector() == std::vector<uint32_t>{0, 1, 2});
}

}
