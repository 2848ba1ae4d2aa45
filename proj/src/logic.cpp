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
#include <unordered_map>

#include "combsim/logic.hpp"
#include "combsim/solve.hpp"

namespace combsim {

namespace {

StateSet pre(const Arena &ar, Quantifier q, const StateSet &x)
{
    switch (q) {
    case Quantifier::P1: return pre_exists_forall(ar, x);
    case Quantifier::Both: return pre_exists_exists(ar, x);
    case Quantifier::P2: return pre_forall_exists(ar, x);
    case Quantifier::None: return pre_forall_forall(ar, x);
    default: break;
    }
    throw std::logic_error("pre: not a strategy quantifier");
}

StateSet least_until(const Arena &ar, Quantifier q, const StateSet &a, const StateSet &b)
{
    StateSet x(ar.num_nodes());
    while (true) {
        StateSet nx = b | (a & pre(ar, q, x));
        if (nx == x) return x;
        x = std::move(nx);
    }
}

StateSet greatest_until(const Arena &ar, Quantifier q, const StateSet &a, const StateSet &b)
{
    StateSet x(ar.num_nodes(), true);
    while (true) {
        StateSet nx = b | (a & pre(ar, q, x));
        if (nx == x) return x;
        x = std::move(nx);
    }
}

/*
 * Shared recursion for both logics: booleans and atoms here, path
 * quantifiers through the callback. Results are memoized per node, which
 * keeps DAG-shaped formulas linear.
 */
template <typename QuantFn>
class Evaluator
{
public:
    Evaluator(size_t n, const std::vector<LabelSet> &labels, const std::vector<std::string> &props, AtomPolicy policy, QuantFn fn)
        : n_(n), labels_(labels), props_(props), policy_(policy), fn_(fn) { }

    const StateSet &eval(const Formula &f)
    {
        auto it = memo_.find(f.get());
        if (it != memo_.end()) return it->second;
        StateSet r = compute(f);
        return memo_.emplace(f.get(), std::move(r)).first->second;
    }

private:
    StateSet atom(const std::string &p)
    {
        StateSet r(n_);
        if (!std::binary_search(props_.begin(), props_.end(), p)) {
            if (policy_ == AtomPolicy::Strict) throw Error(ErrorKind::UnknownAtom, p);
            return r;
        }
        for (size_t s = 0; s < n_; s++) {
            if (std::binary_search(labels_[s].begin(), labels_[s].end(), p)) r.set(s);
        }
        return r;
    }

    StateSet compute(const Formula &f)
    {
        switch (f->kind) {
        case FormulaKind::True: return StateSet(n_, true);
        case FormulaKind::False: return StateSet(n_);
        case FormulaKind::Atom: return atom(f->atom);
        case FormulaKind::NegAtom: return atom(f->atom).complement();
        case FormulaKind::And: {
            StateSet r(n_, true);
            for (auto &c : f->args) r &= eval(c);
            return r;
        }
        case FormulaKind::Or: {
            StateSet r(n_);
            for (auto &c : f->args) r |= eval(c);
            return r;
        }
        case FormulaKind::Quant: {
            StateSet a = f->op == PathOp::Next ? StateSet(n_, true) : eval(f->args[0]);
            StateSet b = eval(f->args.back());
            return fn_(*this, f, a, b);
        }
        }
        throw std::logic_error("eval: bad formula node");
    }

    size_t n_;
    const std::vector<LabelSet> &labels_;
    const std::vector<std::string> &props_;
    AtomPolicy policy_;
    QuantFn fn_;
    std::unordered_map<const FormulaNode *, StateSet> memo_;
};

std::vector<LabelSet> game_labels(const Game &g)
{
    std::vector<LabelSet> l;
    for (StateId s = 0; s < g.num_states(); s++) l.push_back(g.labels(s));
    return l;
}

}

StateSet eval_atl(const Game &g, const Formula &f, AtomPolicy policy)
{
    const Arena &ar = g.arena();
    auto fn = [&ar](auto &, const Formula &node, const StateSet &a, const StateSet &b) {
        if (!is_strategy_quantifier(node->quant)) {
            throw Error(ErrorKind::WrongQuantifierFamily, "probabilistic quantifier on a game");
        }
        switch (node->op) {
        case PathOp::Next: return pre(ar, node->quant, b);
        case PathOp::Until: return least_until(ar, node->quant, a, b);
        case PathOp::WeakUntil: return greatest_until(ar, node->quant, a, b);
        }
        throw std::logic_error("eval_atl: bad path operator");
    };
    auto labels = game_labels(g);
    Evaluator<decltype(fn)> ev(g.num_states(), labels, g.propositions(), policy, fn);
    return ev.eval(f);
}

StateSet eval_qctl(const Mdp &m, const Formula &f, AtomPolicy policy)
{
    const Game gm = mdp_to_game(m);
    const Arena &ar = gm.arena();
    const size_t n = m.num_states();
    auto fn = [&](auto &, const Formula &node, const StateSet &a, const StateSet &b) {
        if (is_strategy_quantifier(node->quant)) {
            throw Error(ErrorKind::WrongQuantifierFamily, "strategy quantifier on an MDP");
        }
        const bool almost = node->quant == Quantifier::Almost;
        switch (node->op) {
        case PathOp::Next: return pre(ar, almost ? Quantifier::P1 : Quantifier::Both, b);
        case PathOp::Until:
            if (almost) return almost_until(m, a, b);
            return least_until(ar, Quantifier::Both, a, b);
        case PathOp::WeakUntil:
            if (almost) return greatest_until(ar, Quantifier::P1, a, b);
            {
                // reach b, or reach a region where Player 1 can stay in a forever
                StateSet stay = greatest_until(ar, Quantifier::P1, a, StateSet(n));
                return least_until(ar, Quantifier::Both, a, b) | least_until(ar, Quantifier::Both, a, stay);
            }
        }
        throw std::logic_error("eval_qctl: bad path operator");
    };
    std::vector<LabelSet> labels;
    for (StateId s = 0; s < n; s++) labels.push_back(m.labels(s));
    Evaluator<decltype(fn)> ev(n, labels, m.propositions(), policy, fn);
    return ev.eval(f);
}

static StateSet apre_unchecked(const Mdp &m, const StateSet &y, const StateSet &x)
{
    StateSet r(m.num_states());
    for (StateId s = 0; s < m.num_states(); s++) {
        if (m.role(s) == MdpRole::Player1) {
            for (auto &[a, t] : m.moves(s)) {
                if (x.test(t)) {
                    r.set(s);
                    break;
                }
            }
        } else {
            bool inside = true, meets = false;
            for (auto &[t, pr] : m.distribution(s)) {
                inside = inside && y.test(t);
                meets = meets || x.test(t);
            }
            if (inside && meets) r.set(s);
        }
    }
    return r;
}

StateSet apre(const Mdp &m, const StateSet &y, const StateSet &x)
{
    if (!x.subset_of(y)) throw Error(ErrorKind::PreconditionViolated, "apre needs X to be a subset of Y");
    return apre_unchecked(m, y, x);
}

StateSet almost_until(const Mdp &m, const StateSet &q, const StateSet &r)
{
    const size_t n = m.num_states();
    StateSet y(n, true);
    while (true) {
        StateSet x(n);
        while (true) {
            StateSet nx = r | (q & apre_unchecked(m, y, x));
            if (nx == x) break;
            x = std::move(nx);
        }
        if (x == y) return y;
        y = std::move(x);
    }
}

Formula f_apre(const Formula &psi1, const Formula &psi2)
{
    return f_and(f_next(Quantifier::P1, psi1), f_next(Quantifier::Both, psi2));
}

Formula almost_until_formula(const Formula &q, const Formula &r, size_t n)
{
    Formula outer = f_true();
    for (size_t i = 0; i < n; i++) {
        Formula inner = f_false();
        for (size_t j = 0; j < n; j++) inner = f_or(r, f_and(q, f_apre(outer, inner)));
        outer = inner;
    }
    return outer;
}

}
