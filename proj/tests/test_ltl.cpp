#include <gtest/gtest.h>

#include <map>

#include "crosslight/ltl.hpp"
#include "formulas.hpp"

using namespace crosslight;
using namespace crosslight::ltl;

namespace {

/// Parses with single-letter propositions a, b, c, d mapped to 0..3.
FormulaPtr p(std::string_view text) {
    return parse(text, [](std::string_view name, const std::vector<std::string>& args) {
        if (name.size() != 1 || name[0] < 'a' || name[0] > 'd' || !args.empty())
            throw Error("unknown proposition '" + std::string(name) + "'");
        return name[0] - 'a';
    });
}

std::string show(const FormulaPtr& f) {
    return to_string(f, [](int i) { return std::string(1, static_cast<char>('a' + i)); });
}

bool same(const FormulaPtr& x, const FormulaPtr& y) {
    if (x->op != y->op) return false;
    if (x->op == Op::Prop) return x->prop == y->prop;
    if (bool(x->lhs) != bool(y->lhs) || bool(x->rhs) != bool(y->rhs)) return false;
    return (!x->lhs || same(x->lhs, y->lhs)) && (!x->rhs || same(x->rhs, y->rhs));
}

std::size_t error_column(std::string_view text) {
    try {
        p(text);
    } catch (const ParseError& e) {
        return e.column();
    }
    return 0;
}

bool in_nnf(const FormulaPtr& f) {
    switch (f->op) {
        case Op::True:
        case Op::False:
        case Op::Prop: return true;
        case Op::Not: return f->lhs->op == Op::Prop;
        case Op::And:
        case Op::Or:
        case Op::Until:
        case Op::Release: return in_nnf(f->lhs) && in_nnf(f->rhs);
        default: return false;
    }
}

}  // namespace

TEST(Ltl, Precedence) {
    const auto a = prop(0), b = prop(1), c = prop(2), d = prop(3);
    EXPECT_TRUE(same(p("a /\\ b \\/ c"), lor(land(a, b), c)));
    EXPECT_TRUE(same(p("a \\/ b /\\ c"), lor(a, land(b, c))));
    EXPECT_TRUE(same(p("~ a /\\ b"), land(lnot(a), b)));
    EXPECT_TRUE(same(p("[] a -> b"), implies(always(a), b)));
    EXPECT_TRUE(same(p("<> ~ a"), eventually(lnot(a))));
    EXPECT_TRUE(same(p("a -> b -> c"), implies(a, implies(b, c))));
    EXPECT_TRUE(same(p("a U b U c"), until(a, until(b, c))));
    EXPECT_TRUE(same(p("a \\/ b U c /\\ d"), until(lor(a, b), land(c, d))));
    EXPECT_TRUE(same(p("a W b -> c"), implies(weak_until(a, b), c)));
    EXPECT_TRUE(same(p("a /\\ ~ b => a W c"), leadsto(land(a, lnot(b)), weak_until(a, c))));
    EXPECT_TRUE(same(p("a => b -> c"), leadsto(a, implies(b, c))));
    EXPECT_TRUE(same(p("(a -> b) -> c"), implies(implies(a, b), c)));
    EXPECT_TRUE(same(p("a R b"), release(a, b)));
    EXPECT_TRUE(same(p("True /\\ ~ False"), land(tt(), lnot(ff()))));
}

TEST(Ltl, PrintedFormReparses) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 2000; ++i) {
        const auto f = formulas::random_formula(rng, 4, 4);
        EXPECT_TRUE(same(p(show(f)), f)) << show(f);
    }
}

TEST(Ltl, ErrorsCarryColumns) {
    EXPECT_EQ(error_column("a /\\"), 5u);
    EXPECT_EQ(error_column("a /\\ (b"), 8u);
    EXPECT_EQ(error_column("a & b"), 3u);
    EXPECT_EQ(error_column("a b"), 3u);
    EXPECT_EQ(error_column("U a"), 1u);
    EXPECT_EQ(error_column("a /\\ zz"), 6u);
    EXPECT_EQ(error_column(""), 1u);
}

TEST(Ltl, MaxProp) {
    EXPECT_EQ(max_prop(p("a U (c /\\ b)")), 2);
    EXPECT_EQ(max_prop(p("True")), -1);
}

TEST(Ltl, NnfShapeAndMeaning) {
    std::mt19937_64 rng(62);
    for (int i = 0; i < 3000; ++i) {
        const auto f = formulas::random_formula(rng, 4, 3);
        const auto pos = to_nnf(f);
        const auto neg = to_nnf(f, true);
        ASSERT_TRUE(in_nnf(pos)) << show(f) << " -> " << show(pos);
        ASSERT_TRUE(in_nnf(neg)) << show(f) << " -> " << show(neg);
        for (int w = 0; w < 5; ++w) {
            const auto word = formulas::random_word(rng, 3, 5);
            const bool truth = oracle::holds_on(f, word);
            ASSERT_EQ(oracle::holds_on(pos, word), truth) << show(f);
            ASSERT_EQ(oracle::holds_on(neg, word), !truth) << show(f);
        }
    }
}

TEST(Ltl, OracleBasics) {
    // p holds only at position 1 of the word 0 1 (0 1 0 1 ...).
    const oracle::LassoWord w{{0, 1}, 0};
    EXPECT_TRUE(oracle::holds_on(p("[] <> a"), w));
    EXPECT_FALSE(oracle::holds_on(p("<> [] a"), w));
    EXPECT_TRUE(oracle::holds_on(p("~ a U a"), w));
    EXPECT_FALSE(oracle::holds_on(p("a W b"), w));
    EXPECT_TRUE(oracle::holds_on(p("~ a W b"), oracle::LassoWord{{0}, 0}));
    EXPECT_FALSE(oracle::holds_on(p("~ a U b"), oracle::LassoWord{{0}, 0}));
    EXPECT_TRUE(oracle::holds_on(p("a => <> ~ a"), w));
}
