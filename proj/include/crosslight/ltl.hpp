#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "crosslight/configuration.hpp"

namespace crosslight::ltl {

enum class Op : std::uint8_t {
    True,
    False,
    Prop,
    Not,
    And,
    Or,
    Implies,
    Always,
    Eventually,
    Until,
    WeakUntil,
    Release,
    Leadsto,  // p => q, short for [](p -> q)
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula tree. Propositions are indices into a table owned by
/// whoever built the formula.
struct Formula {
    Op op = Op::True;
    int prop = -1;
    FormulaPtr lhs;
    FormulaPtr rhs;
};

FormulaPtr tt();
FormulaPtr ff();
FormulaPtr prop(int index);
FormulaPtr lnot(FormulaPtr a);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr always(FormulaPtr a);
FormulaPtr eventually(FormulaPtr a);
FormulaPtr until(FormulaPtr a, FormulaPtr b);
FormulaPtr weak_until(FormulaPtr a, FormulaPtr b);
FormulaPtr release(FormulaPtr a, FormulaPtr b);
FormulaPtr leadsto(FormulaPtr a, FormulaPtr b);

/// Fully parenthesized rendering; `name` prints proposition indices.
std::string to_string(const FormulaPtr& f, const std::function<std::string(int)>& name);

/// Largest proposition index used, or -1.
int max_prop(const FormulaPtr& f);

/// Negation normal form over True, False, Prop, Not(Prop), And, Or, Until
/// and Release. `negate` yields the form of the negated formula.
FormulaPtr to_nnf(const FormulaPtr& f, bool negate = false);

class ParseError : public Error {
public:
    ParseError(std::size_t column, const std::string& what)
        : Error("column " + std::to_string(column) + ": " + what), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

/// Maps a proposition's name and raw arguments to a table index; throws Error
/// to reject it.
using PropResolver = std::function<int(std::string_view name, const std::vector<std::string>& args)>;

/// Parses the textual syntax: `True False ~ [] <> /\ \/ -> => U W R`,
/// parentheses, and propositions `name` or `name(arg, ...)`. Binding from
/// tightest: unary operators, /\, \/, U W R, then -> and =>; binary
/// operators other than /\ and \/ group to the right.
FormulaPtr parse(std::string_view text, const PropResolver& resolve);

}  // namespace crosslight::ltl
