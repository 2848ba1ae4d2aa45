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

#include <functional>

#include <doctest.h>

#include "combsim/io.hpp"
#include "combsim/logic.hpp"
#include "combsim/random.hpp"
#include "combsim/relations.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace combsim;
using testing::game;

namespace {

StateSet set_of(size_t n, std::initializer_list<StateId> xs)
{
    StateSet s(n);
    for (StateId x : xs) s.set(x);
    return s;
}

StateSet random_set(Rng &rng, size_t n)
{
    StateSet s(n);
    for (size_t i = 0; i < n; i++) if (draw(rng, 2)) s.set(i);
    return s;
}

ErrorKind kind_of(const std::function<void()> &fn)
{
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::SchemaError;
}

const std::vector<Quantifier> kGameQuants{Quantifier::P1, Quantifier::Both, Quantifier::P2, Quantifier::None};
const std::vector<Quantifier> kMdpQuants{Quantifier::Almost, Quantifier::Positive};

}

TEST_SUITE("logic") {

TEST_CASE("formula text round trip")
{
    for (const char *text : {"<<1>>(p W q)", "<<1,2>>X !p", "(p & q) | !r", "<<0>>(true U p)", "<Almost>(p U q)",
                             "<Positive>X (p | <<2>>X false)"}) {
        Formula f = parse_formula(text);
        CHECK(structurally_equal(parse_formula(to_string(f)), f));
    }
    CHECK(structurally_equal(parse_formula("<<1>>G p"), f_globally(Quantifier::P1, f_atom("p"))));
    CHECK(structurally_equal(parse_formula("<<1,2>>F p"), f_eventually(Quantifier::Both, f_atom("p"))));
    CHECK(structurally_equal(parse_formula("<<>>X p"), parse_formula("<<0>>X p")));
    CHECK(quantifier_depth(parse_formula("<<1>>X <<2>>X p & q")) == 2);
    CHECK(kind_of([] { parse_formula("<<1>>(p W"); }) == ErrorKind::FormulaSyntax);
    CHECK(kind_of([] { parse_formula("!(p & q)"); }) == ErrorKind::FormulaSyntax);
    CHECK(kind_of([] { parse_formula("p U q"); }) == ErrorKind::FormulaSyntax);

    Rng rng(2);
    for (int i = 0; i < 200; i++) {
        Formula f = oracle::random_formula(rng, 3, {"p", "q"}, kGameQuants);
        CHECK(structurally_equal(parse_formula(to_string(f)), f));
    }
}

TEST_CASE("atl basics")
{
    Game g = game("s0 s1 s2:p", "s0 a s1; s0 b s0; s1 a s2; s2 a s2");
    CHECK(eval_atl(g, parse_formula("<<1>>(true W false)")).count() == 3);
    CHECK(eval_atl(g, parse_formula("<<1,2>>(true U p)")).count() == 3);
    CHECK(eval_atl(g, parse_formula("<<1>>G !p")).to_vector() == std::vector<uint32_t>{0});
    CHECK(kind_of([&] { eval_atl(g, parse_formula("<<1>>X zz")); }) == ErrorKind::UnknownAtom);
    CHECK(eval_atl(g, parse_formula("<<1>>X zz"), AtomPolicy::AbsentIsFalse).none());
    CHECK(kind_of([&] { eval_atl(g, parse_formula("<Almost>X p")); }) == ErrorKind::WrongQuantifierFamily);
}

TEST_CASE("atl agrees with strategy enumeration")
{
    Rng rng(77);
    for (int i = 0; i < 150; i++) {
        Game g = random_game(rng, {1 + draw(rng, 5), 2, 2, 2, false});
        for (int k = 0; k < 6; k++) {
            Formula f = oracle::random_formula(rng, 3, {"p", "q"}, kGameQuants);
            INFO(to_string(f));
            CHECK(oracle::to_bits(eval_atl(g, f)) == oracle::atl(g, f));
        }
    }
}

TEST_CASE("qctl basics")
{
    Rng rng(1);
    Mdp m = random_mdp(rng, {5, 2, 1, 2, false});
    CHECK(eval_qctl(m, parse_formula("<Almost>X true")).count() == 5);
    CHECK(eval_qctl(m, parse_formula("<Positive>(true U q)"), AtomPolicy::AbsentIsFalse).none());
    CHECK(kind_of([&] { eval_qctl(m, parse_formula("<<1>>X p")); }) == ErrorKind::WrongQuantifierFamily);
}

TEST_CASE("qctl agrees with the Markov-chain oracle")
{
    Rng rng(5);
    for (int i = 0; i < 150; i++) {
        Mdp m = random_mdp(rng, {2 + draw(rng, 4), 2, 2, 2, i % 2 == 0});
        for (int k = 0; k < 6; k++) {
            Formula f = oracle::random_formula(rng, 3, {"p", "q"}, kMdpQuants);
            INFO(to_string(f));
            CHECK(oracle::to_bits(eval_qctl(m, f)) == oracle::qctl(m, f));
        }
    }
}

TEST_CASE("apre on the worked example")
{
    Mdp m = std::get<Mdp>(load_model(std::string(COMBSIM_FIXTURES) + "/example1_mdp.json"));
    REQUIRE(m.num_states() == 5);
    size_t p1 = 0;
    for (StateId s = 0; s < 5; s++) p1 += m.role(s) == MdpRole::Player1;
    CHECK(p1 == 3);
    auto id = [&](const char *name) { return *m.find_state(name); };
    StateSet y = set_of(5, {id("s'3"), id("s'4")}), x = set_of(5, {id("s'4")});
    CHECK(apre(m, y, x) == set_of(5, {id("s'0"), id("s'2"), id("s'3")}));
    CHECK(apre(m, StateSet(5, true), StateSet(5, true)) == StateSet(5, true));
    CHECK(apre(m, y, StateSet(5)).none());
    CHECK(kind_of([&] { apre(m, x, y); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("almost-sure until")
{
    Rng rng(9);
    for (int i = 0; i < 200; i++) {
        Mdp m = random_mdp(rng, {2 + draw(rng, 4), 2, 0, 2, false});
        size_t n = m.num_states();
        StateSet q = random_set(rng, n), r = random_set(rng, n);
        CHECK(almost_until(m, q, StateSet(n, true)) == StateSet(n, true));
        CHECK(almost_until(m, StateSet(n), StateSet(n)).none());
        // compare against the oracle through atoms naming q and r
        Mdp::Parts p;
        for (StateId s = 0; s < n; s++) {
            p.state_names.push_back(m.state_name(s));
            LabelSet l;
            if (q.test(s)) l.push_back("q");
            if (r.test(s)) l.push_back("r");
            p.labels.push_back(l);
            p.roles.push_back(m.role(s));
            p.moves.push_back(m.moves(s));
            p.dist.push_back(m.distribution(s));
        }
        p.action_names = m.action_names();
        p.declared_props = {"q", "r"};
        p.initial = m.initial();
        Mdp lm = Mdp::from_parts(std::move(p));
        Formula f = f_until(Quantifier::Almost, f_atom("q"), f_atom("r"));
        CHECK(oracle::to_bits(almost_until(m, q, r)) == oracle::qctl(lm, f));
    }
}

TEST_CASE("apre formula matches apre")
{
    Rng rng(4);
    for (int i = 0; i < 100; i++) {
        Mdp m = random_mdp(rng, {2 + draw(rng, 6), 2, 0, 2, false});
        size_t n = m.num_states();
        StateSet y = random_set(rng, n), x = random_set(rng, n) & y;
        Mdp::Parts p;
        for (StateId s = 0; s < n; s++) {
            p.state_names.push_back(m.state_name(s));
            LabelSet l;
            if (y.test(s)) l.push_back("y");
            if (x.test(s)) l.push_back("x");
            normalize_labels(l);
            p.labels.push_back(l);
            p.roles.push_back(m.role(s));
            p.moves.push_back(m.moves(s));
            p.dist.push_back(m.distribution(s));
        }
        p.action_names = m.action_names();
        p.declared_props = {"x", "y"};
        Mdp lm = Mdp::from_parts(std::move(p));
        CHECK(eval_atl(mdp_to_game(lm), f_apre(f_atom("y"), f_atom("x"))) == apre(m, y, x));
    }
    CHECK(f_apre(f_true(), f_false())->kind == FormulaKind::And);
}

TEST_CASE("distinguishing formulas")
{
    Game g = game("s0:p,turn", "s0 a s0");
    Game h = game("t0:turn", "t0 a t0");
    Formula f = distinguishing_formula(g, h, 0, 0);
    CHECK(structurally_equal(f, f_atom("p")));
    CHECK(kind_of([&] { distinguishing_formula(g, g, 0, 0); }) == ErrorKind::NotDistinguishable);
    Game plain = game("s0 s1", "s0 a s0 s1; s0 b s1; s1 a s1");
    CHECK(kind_of([&] { distinguishing_formula(plain, plain, 0, 1); }) == ErrorKind::NotAlternating);

    Rng rng(12);
    size_t checked = 0;
    for (int i = 0; i < 60; i++) {
        GameShape shape{1 + draw(rng, 6), 2, 1, 2, false};
        Game a = random_alternating_game(rng, shape), b = random_alternating_game(rng, shape);
        RelationMatrix c = max_combined_simulation(a, b);
        for (StateId s = 0; s < a.num_states(); s++) {
            for (StateId t = 0; t < b.num_states(); t++) {
                if (c.contains(s, t)) continue;
                Formula d = distinguishing_formula(a, b, s, t);
                CHECK(eval_atl(a, d, AtomPolicy::AbsentIsFalse).test(s));
                CHECK_FALSE(eval_atl(b, d, AtomPolicy::AbsentIsFalse).test(t));
                checked++;
            }
        }
    }
    CHECK(checked > 100);
}

}
