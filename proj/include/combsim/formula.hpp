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

#ifndef COMBSIM_FORMULA_HPP
#define COMBSIM_FORMULA_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace combsim {

/**
 * Path quantifiers. P1, Both, P2 and None are the strategy quantifiers
 * <<1>>, <<1,2>>, <<2>> and <<>>; Almost and Positive are the
 * probabilistic ones and only make sense on MDPs.
 */
enum class Quantifier : uint8_t { P1, Both, P2, None, Almost, Positive };
enum class PathOp : uint8_t { Next, Until, WeakUntil };
enum class FormulaKind : uint8_t { True, False, Atom, NegAtom, And, Or, Quant };

bool is_strategy_quantifier(Quantifier q);

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

/**
 * State formula in positive normal form: negation only on atoms.
 * Nodes are immutable and may be shared, so a formula is a DAG.
 * Quant: args = {rhs} for Next, {lhs, rhs} for Until and WeakUntil.
 */
struct FormulaNode {
    FormulaKind kind;
    std::string atom;
    Quantifier quant = Quantifier::P1;
    PathOp op = PathOp::Next;
    std::vector<Formula> args;
};

Formula f_true();
Formula f_false();
Formula f_atom(std::string p);
Formula f_neg_atom(std::string p);
// n-ary; empty conjunction is true, empty disjunction false, singletons collapse
Formula f_and(std::vector<Formula> fs);
Formula f_or(std::vector<Formula> fs);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_next(Quantifier q, Formula f);
Formula f_until(Quantifier q, Formula a, Formula b);
Formula f_weak_until(Quantifier q, Formula a, Formula b);
// G f is f W false
Formula f_globally(Quantifier q, Formula f);
// F f is true U f
Formula f_eventually(Quantifier q, Formula f);

/**
 * Text form, accepted back by parse_formula:
 *   true | false | p | !p | (f & g) | (f | g)
 *   Q X f | Q (f U g) | Q (f W g) | Q G f | Q F f
 * with Q one of <<1>> <<2>> <<1,2>> <<>> <Almost> <Positive>.
 */
std::string to_string(const Formula &f);

// throws Error(FormulaSyntax) with the offending column
Formula parse_formula(std::string_view text);

bool structurally_equal(const Formula &a, const Formula &b);
// nesting depth of quantifiers
size_t quantifier_depth(const Formula &f);
// number of distinct nodes in the DAG
size_t dag_size(const Formula &f);

}

#endif
