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

#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "combsim/error.hpp"
#include "combsim/formula.hpp"

namespace combsim {

bool is_strategy_quantifier(Quantifier q)
{
    return q == Quantifier::P1 || q == Quantifier::Both || q == Quantifier::P2 || q == Quantifier::None;
}

static Formula make(FormulaKind k, std::string atom = {}, std::vector<Formula> args = {})
{
    auto n = std::make_shared<FormulaNode>();
    n->kind = k;
    n->atom = std::move(atom);
    n->args = std::move(args);
    return n;
}

Formula f_true()
{
    static const Formula t = make(FormulaKind::True);
    return t;
}

Formula f_false()
{
    static const Formula f = make(FormulaKind::False);
    return f;
}

Formula f_atom(std::string p) { return make(FormulaKind::Atom, std::move(p)); }
Formula f_neg_atom(std::string p) { return make(FormulaKind::NegAtom, std::move(p)); }

Formula f_and(std::vector<Formula> fs)
{
    if (fs.empty()) return f_true();
    if (fs.size() == 1) return fs[0];
    return make(FormulaKind::And, {}, std::move(fs));
}

Formula f_or(std::vector<Formula> fs)
{
    if (fs.empty()) return f_false();
    if (fs.size() == 1) return fs[0];
    return make(FormulaKind::Or, {}, std::move(fs));
}

Formula f_and(Formula a, Formula b) { return f_and(std::vector<Formula>{std::move(a), std::move(b)}); }
Formula f_or(Formula a, Formula b) { return f_or(std::vector<Formula>{std::move(a), std::move(b)}); }

static Formula quant(Quantifier q, PathOp op, std::vector<Formula> args)
{
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Quant;
    n->quant = q;
    n->op = op;
    n->args = std::move(args);
    return n;
}

Formula f_next(Quantifier q, Formula f) { return quant(q, PathOp::Next, {std::move(f)}); }
Formula f_until(Quantifier q, Formula a, Formula b) { return quant(q, PathOp::Until, {std::move(a), std::move(b)}); }
Formula f_weak_until(Quantifier q, Formula a, Formula b) { return quant(q, PathOp::WeakUntil, {std::move(a), std::move(b)}); }
Formula f_globally(Quantifier q, Formula f) { return f_weak_until(q, std::move(f), f_false()); }
Formula f_eventually(Quantifier q, Formula f) { return f_until(q, f_true(), std::move(f)); }

static const char *quant_text(Quantifier q)
{
    switch (q) {
    case Quantifier::P1: return "<<1>>";
    case Quantifier::Both: return "<<1,2>>";
    case Quantifier::P2: return "<<2>>";
    case Quantifier::None: return "<<0>>";
    case Quantifier::Almost: return "<Almost>";
    case Quantifier::Positive: return "<Positive>";
    }
    return "?";
}

static void print(const Formula &f, std::string &out)
{
    switch (f->kind) {
    case FormulaKind::True: out += "true"; return;
    case FormulaKind::False: out += "false"; return;
    case FormulaKind::Atom: out += f->atom; return;
    case FormulaKind::NegAtom: out += "!" + f->atom; return;
    case FormulaKind::And:
    case FormulaKind::Or:
        out += "(";
        for (size_t i = 0; i < f->args.size(); i++) {
            if (i > 0) out += f->kind == FormulaKind::And ? " & " : " | ";
            print(f->args[i], out);
        }
        out += ")";
        return;
    case FormulaKind::Quant:
        out += quant_text(f->quant);
        if (f->op == PathOp::Next) {
            out += "X ";
            print(f->args[0], out);
        } else {
            out += "(";
            print(f->args[0], out);
            out += f->op == PathOp::Until ? " U " : " W ";
            print(f->args[1], out);
            out += ")";
        }
        return;
    }
}

std::string to_string(const Formula &f)
{
    std::string s;
    print(f, s);
    return s;
}

/*
 * Parser
 */

namespace {

class Parser
{
public:
    explicit Parser(std::string_view s) : s_(s) { }

    Formula parse()
    {
        Formula f = disjunction();
        skip();
        if (pos_ != s_.size()) fail("unexpected input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw Error(ErrorKind::FormulaSyntax, "column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) pos_++;
    }

    bool accept(std::string_view tok)
    {
        skip();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok)
    {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    static bool ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_' || c == '\'' || c == '.'; }

    std::string ident()
    {
        skip();
        size_t b = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) pos_++;
        if (b == pos_) fail("expected a proposition");
        return std::string(s_.substr(b, pos_ - b));
    }

    // keyword that must not continue as an identifier
    bool keyword(std::string_view kw)
    {
        skip();
        if (s_.substr(pos_, kw.size()) != kw) return false;
        size_t e = pos_ + kw.size();
        if (e < s_.size() && ident_char(s_[e])) return false;
        pos_ = e;
        return true;
    }

    Formula disjunction()
    {
        std::vector<Formula> fs{conjunction()};
        while (accept("|")) fs.push_back(conjunction());
        return f_or(std::move(fs));
    }

    Formula conjunction()
    {
        std::vector<Formula> fs{unary()};
        while (accept("&")) fs.push_back(unary());
        return f_and(std::move(fs));
    }

    bool quantifier(Quantifier &q)
    {
        static const std::pair<const char *, Quantifier> table[] = {
            {"<<1,2>>", Quantifier::Both}, {"<<1>>", Quantifier::P1}, {"<<2>>", Quantifier::P2},
            {"<<0>>", Quantifier::None}, {"<<>>", Quantifier::None}, {"<Almost>", Quantifier::Almost}, {"<Positive>", Quantifier::Positive},
        };
        for (auto &[tok, val] : table) {
            if (accept(tok)) {
                q = val;
                return true;
            }
        }
        return false;
    }

    Formula unary()
    {
        Quantifier q;
        if (quantifier(q)) return path(q);
        if (accept("!")) return f_neg_atom(ident());
        if (accept("(")) {
            Formula f = disjunction();
            expect(")");
            return f;
        }
        if (keyword("true")) return f_true();
        if (keyword("false")) return f_false();
        skip();
        if (pos_ == s_.size()) fail("unexpected end of formula");
        return f_atom(ident());
    }

    Formula path(Quantifier q)
    {
        if (keyword("X")) return f_next(q, unary());
        if (keyword("G")) return f_globally(q, unary());
        if (keyword("F")) return f_eventually(q, unary());
        expect("(");
        Formula a = disjunction();
        PathOp op;
        if (keyword("U")) {
            op = PathOp::Until;
        } else if (keyword("W")) {
            op = PathOp::WeakUntil;
        } else {
            fail("expected 'U' or 'W'");
        }
        Formula b = disjunction();
        expect(")");
        return op == PathOp::Until ? f_until(q, a, b) : f_weak_until(q, a, b);
    }

    std::string_view s_;
    size_t pos_ = 0;
};

}

Formula parse_formula(std::string_view text)
{
    return Parser(text).parse();
}

bool structurally_equal(const Formula &a, const Formula &b)
{
    if (a == b) return true;
    if (a->kind != b->kind || a->atom != b->atom || a->args.size() != b->args.size()) return false;
    if (a->kind == FormulaKind::Quant && (a->quant != b->quant || a->op != b->op)) return false;
    for (size_t i = 0; i < a->args.size(); i++) {
        if (!structurally_equal(a->args[i], b->args[i])) return false;
    }
    return true;
}

size_t quantifier_depth(const Formula &f)
{
    size_t d = 0;
    for (auto &c : f->args) d = std::max(d, quantifier_depth(c));
    return d + (f->kind == FormulaKind::Quant ? 1 : 0);
}

size_t dag_size(const Formula &f)
{
    std::unordered_set<const FormulaNode *> seen;
    std::vector<const FormulaNode *> stack{f.get()};
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        for (auto &c : n->args) stack.push_back(c.get());
    }
    return seen.size();
}

}
