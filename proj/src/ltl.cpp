#include "crosslight/ltl.hpp"

#include <algorithm>
#include <cctype>

namespace crosslight::ltl {

namespace {

FormulaPtr node(Op op, FormulaPtr a = nullptr, FormulaPtr b = nullptr) {
    auto f = std::make_shared<Formula>();
    f->op = op;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}

enum class Tok { End, LParen, RParen, Comma, String, Ident, Not, Always, Eventually, And, Or, Implies, Leadsto };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t column = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
            const std::size_t col = i_ + 1;
            if (i_ >= s_.size()) {
                out.push_back({Tok::End, "", col});
                return out;
            }
            const char c = s_[i_];
            auto two = [&](std::string_view t) { return s_.substr(i_, 2) == t; };
            if (c == '(') out.push_back({Tok::LParen, "(", col}), ++i_;
            else if (c == ')') out.push_back({Tok::RParen, ")", col}), ++i_;
            else if (c == ',') out.push_back({Tok::Comma, ",", col}), ++i_;
            else if (c == '~') out.push_back({Tok::Not, "~", col}), ++i_;
            else if (two("[]")) out.push_back({Tok::Always, "[]", col}), i_ += 2;
            else if (two("<>")) out.push_back({Tok::Eventually, "<>", col}), i_ += 2;
            else if (two("/\\")) out.push_back({Tok::And, "/\\", col}), i_ += 2;
            else if (two("\\/")) out.push_back({Tok::Or, "\\/", col}), i_ += 2;
            else if (two("->")) out.push_back({Tok::Implies, "->", col}), i_ += 2;
            else if (two("=>")) out.push_back({Tok::Leadsto, "=>", col}), i_ += 2;
            else if (c == '"') {
                const auto end = s_.find('"', i_ + 1);
                if (end == std::string_view::npos) throw ParseError(col, "unterminated string");
                out.push_back({Tok::String, std::string(s_.substr(i_, end - i_ + 1)), col});
                i_ = end + 1;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i_;
                while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
                out.push_back({Tok::Ident, std::string(s_.substr(i_, j - i_)), col});
                i_ = j;
            } else {
                throw ParseError(col, std::string("unexpected character '") + c + "'");
            }
        }
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

class Parser {
public:
    Parser(std::vector<Token> toks, const PropResolver& resolve) : t_(std::move(toks)), resolve_(resolve) {}

    FormulaPtr run() {
        FormulaPtr f = implication();
        if (peek().kind != Tok::End) throw ParseError(peek().column, "unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return t_[pos_]; }
    const Token& next() { return t_[pos_++]; }
    bool is_ident(std::string_view name) const { return peek().kind == Tok::Ident && peek().text == name; }

    void expect(Tok k, std::string_view what) {
        if (peek().kind != k) throw ParseError(peek().column, "expected " + std::string(what));
        ++pos_;
    }

    FormulaPtr implication() {
        FormulaPtr lhs = temporal();
        if (peek().kind == Tok::Implies || peek().kind == Tok::Leadsto) {
            const Op op = next().kind == Tok::Implies ? Op::Implies : Op::Leadsto;
            return node(op, lhs, implication());
        }
        return lhs;
    }

    FormulaPtr temporal() {
        FormulaPtr lhs = disjunction();
        if (is_ident("U") || is_ident("W") || is_ident("R")) {
            const char c = next().text[0];
            const Op op = c == 'U' ? Op::Until : c == 'W' ? Op::WeakUntil : Op::Release;
            return node(op, lhs, temporal());
        }
        return lhs;
    }

    FormulaPtr disjunction() {
        FormulaPtr f = conjunction();
        while (peek().kind == Tok::Or) {
            ++pos_;
            f = node(Op::Or, f, conjunction());
        }
        return f;
    }

    FormulaPtr conjunction() {
        FormulaPtr f = unary();
        while (peek().kind == Tok::And) {
            ++pos_;
            f = node(Op::And, f, unary());
        }
        return f;
    }

    FormulaPtr unary() {
        switch (peek().kind) {
            case Tok::Not: ++pos_; return node(Op::Not, unary());
            case Tok::Always: ++pos_; return node(Op::Always, unary());
            case Tok::Eventually: ++pos_; return node(Op::Eventually, unary());
            default: return atom();
        }
    }

    FormulaPtr atom() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            ++pos_;
            FormulaPtr f = implication();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind != Tok::Ident) {
            throw ParseError(t.column, t.kind == Tok::End ? "unexpected end of formula" : "unexpected '" + t.text + "'");
        }
        if (t.text == "True") return ++pos_, tt();
        if (t.text == "False") return ++pos_, ff();
        if (t.text == "U" || t.text == "W" || t.text == "R") throw ParseError(t.column, "operator " + t.text + " needs a left operand");
        const Token name = next();
        std::vector<std::string> args;
        if (peek().kind == Tok::LParen) {
            ++pos_;
            for (;;) {
                const Token& a = peek();
                if (a.kind != Tok::Ident && a.kind != Tok::String) throw ParseError(a.column, "expected an argument");
                args.push_back(next().text);
                if (peek().kind == Tok::Comma) {
                    ++pos_;
                    continue;
                }
                expect(Tok::RParen, "',' or ')'");
                break;
            }
        }
        int index = -1;
        try {
            index = resolve_(name.text, args);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(name.column, e.what());
        }
        return prop(index);
    }

    std::vector<Token> t_;
    const PropResolver& resolve_;
    std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr tt() {
    static const FormulaPtr f = node(Op::True);
    return f;
}
FormulaPtr ff() {
    static const FormulaPtr f = node(Op::False);
    return f;
}
FormulaPtr prop(int index) {
    auto f = std::make_shared<Formula>();
    f->op = Op::Prop;
    f->prop = index;
    return f;
}
FormulaPtr lnot(FormulaPtr a) { return node(Op::Not, std::move(a)); }
FormulaPtr land(FormulaPtr a, FormulaPtr b) { return node(Op::And, std::move(a), std::move(b)); }
FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return node(Op::Or, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return node(Op::Implies, std::move(a), std::move(b)); }
FormulaPtr always(FormulaPtr a) { return node(Op::Always, std::move(a)); }
FormulaPtr eventually(FormulaPtr a) { return node(Op::Eventually, std::move(a)); }
FormulaPtr until(FormulaPtr a, FormulaPtr b) { return node(Op::Until, std::move(a), std::move(b)); }
FormulaPtr weak_until(FormulaPtr a, FormulaPtr b) { return node(Op::WeakUntil, std::move(a), std::move(b)); }
FormulaPtr release(FormulaPtr a, FormulaPtr b) { return node(Op::Release, std::move(a), std::move(b)); }
FormulaPtr leadsto(FormulaPtr a, FormulaPtr b) { return node(Op::Leadsto, std::move(a), std::move(b)); }

std::string to_string(const FormulaPtr& f, const std::function<std::string(int)>& name) {
    auto bin = [&](std::string_view op) {
        return "(" + to_string(f->lhs, name) + " " + std::string(op) + " " + to_string(f->rhs, name) + ")";
    };
    switch (f->op) {
        case Op::True: return "True";
        case Op::False: return "False";
        case Op::Prop: return name(f->prop);
        case Op::Not: return "~ " + to_string(f->lhs, name);
        case Op::Always: return "[] " + to_string(f->lhs, name);
        case Op::Eventually: return "<> " + to_string(f->lhs, name);
        case Op::And: return bin("/\\");
        case Op::Or: return bin("\\/");
        case Op::Implies: return bin("->");
        case Op::Until: return bin("U");
        case Op::WeakUntil: return bin("W");
        case Op::Release: return bin("R");
        case Op::Leadsto: return bin("=>");
    }
    return "?";
}

int max_prop(const FormulaPtr& f) {
    if (!f) return -1;
    if (f->op == Op::Prop) return f->prop;
    return std::max(max_prop(f->lhs), max_prop(f->rhs));
}

FormulaPtr to_nnf(const FormulaPtr& f, bool neg) {
    const FormulaPtr& a = f->lhs;
    const FormulaPtr& b = f->rhs;
    switch (f->op) {
        case Op::True: return neg ? ff() : tt();
        case Op::False: return neg ? tt() : ff();
        case Op::Prop: return neg ? lnot(f) : f;
        case Op::Not: return to_nnf(a, !neg);
        case Op::And: return neg ? lor(to_nnf(a, true), to_nnf(b, true)) : land(to_nnf(a), to_nnf(b));
        case Op::Or: return neg ? land(to_nnf(a, true), to_nnf(b, true)) : lor(to_nnf(a), to_nnf(b));
        case Op::Implies: return neg ? land(to_nnf(a), to_nnf(b, true)) : lor(to_nnf(a, true), to_nnf(b));
        case Op::Always: return neg ? until(tt(), to_nnf(a, true)) : release(ff(), to_nnf(a));
        case Op::Eventually: return neg ? release(ff(), to_nnf(a, true)) : until(tt(), to_nnf(a));
        case Op::Until: return neg ? release(to_nnf(a, true), to_nnf(b, true)) : until(to_nnf(a), to_nnf(b));
        case Op::Release: return neg ? until(to_nnf(a, true), to_nnf(b, true)) : release(to_nnf(a), to_nnf(b));
        case Op::WeakUntil:
            // a W b == b R (a \/ b)
            return neg ? until(to_nnf(b, true), land(to_nnf(a, true), to_nnf(b, true)))
                       : release(to_nnf(b), lor(to_nnf(a), to_nnf(b)));
        case Op::Leadsto: return to_nnf(always(implies(a, b)), neg);
    }
    return f;
}

FormulaPtr parse(std::string_view text, const PropResolver& resolve) {
    return Parser(Lexer(text).run(), resolve).run();
}

}  // namespace crosslight::ltl
