#pragma once

#include <cstdint>
#include <vector>

#include "crosslight/ltl.hpp"

namespace crosslight {

/// State-labelled Büchi automaton over proposition valuations (bit i of a
/// valuation is proposition i). A run enters state s only on a valuation that
/// sets every bit of `pos` and no bit of `neg`.
struct Buchi {
    struct State {
        std::uint64_t pos = 0;
        std::uint64_t neg = 0;
        bool accepting = false;
        std::vector<std::uint32_t> succ;
    };
    std::vector<State> states;
    std::vector<std::uint32_t> initial;

    bool admits(std::uint32_t s, std::uint64_t valuation) const {
        const State& st = states[s];
        return (valuation & st.pos) == st.pos && (valuation & st.neg) == 0;
    }
};

/// Tableau translation (generalized acceptance, one set per until
/// subformula) followed by counter degeneralization. Accepts exactly the
/// models of `f`. Throws Error for proposition indices of 64 or more.
Buchi ltl_to_buchi(const ltl::FormulaPtr& f);

}  // namespace crosslight
