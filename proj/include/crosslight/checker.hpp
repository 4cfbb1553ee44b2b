#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crosslight/buchi.hpp"
#include "crosslight/configuration.hpp"
#include "crosslight/kripke.hpp"
#include "crosslight/ltl.hpp"
#include "crosslight/props.hpp"
#include "crosslight/scenarios.hpp"

namespace crosslight {

/// Path through a Kripke structure as edge indices: `prefix` leaves state 0,
/// `cycle` (possibly empty) starts and ends where the prefix ends.
struct Lasso {
    std::vector<std::uint64_t> prefix;
    std::vector<std::uint64_t> cycle;
};

/// Accepting lasso of the product of `k` and `b`, found by nested DFS.
std::optional<Lasso> find_accepting_lasso(const Kripke& k, const Buchi& b);

/// Counterexample to `f` on `k` (proposition i is valuation bit i), or
/// nullopt when every path satisfies `f`.
std::optional<Lasso> check_ltl(const Kripke& k, const ltl::FormulaPtr& f);

/// Counterexample to "every p-state is followed within `bound` time units by a
/// q-state" on `k`, where bits `p_bit`/`q_bit` hold p and q. The lasso is
/// either a finite prefix whose last step overruns the bound, or ends in a
/// deadlock self-loop with an obligation pending.
std::optional<Lasso> check_bounded_response(const Kripke& k, int p_bit, int q_bit, std::uint64_t bound);

struct TraceStep {
    std::string rule;
    TimeValue duration;  // nonzero only for ticks
    Configuration state;
};

/// Concrete run: the state after step i is steps[i].state. When
/// `cycle_start` is set, the last state equals the state at that position
/// (0 is the initial state) and the steps after it repeat forever.
struct Trace {
    Configuration init;
    std::vector<TraceStep> steps;
    std::optional<std::size_t> cycle_start;

    const Configuration& state_at(std::size_t i) const { return i == 0 ? init : steps[i - 1].state; }
};

Trace to_trace(const StateGraph& g, const Lasso& l);

struct Verdict {
    bool holds = true;
    std::optional<Trace> counterexample;
};

struct CheckResult {
    Verdict verdict;
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::size_t max_branching = 0;
};

/// A formula over model propositions.
struct ModelFormula {
    ltl::FormulaPtr formula;
    std::vector<AtomicProp> props;

    std::string to_string() const;
};

/// Parses a formula; propositions without an intersection name refer to
/// `default_xing`.
ModelFormula parse_model_formula(std::string_view text, const std::string& default_xing);

/// Parses a single proposition such as `walking(NS)`.
AtomicProp parse_prop(std::string_view text, const std::string& default_xing);

CheckResult model_check_ltl(const Configuration& init, const Params& p, const ModelFormula& f,
                            const ExploreOptions& opt = {});

CheckResult check_bounded_response(const Configuration& init, const Params& p, const AtomicProp& trigger,
                                   const AtomicProp& response, TimeValue bound, const ExploreOptions& opt = {});

/// Catalog names: P1, P2, P3, P4, P4x (LTL) and P5 (bounded response of
/// walking(NS) to pedArriving(NS)).
std::vector<std::string> catalog_names();
bool is_catalog_ltl(std::string_view name);
/// Formula text of an LTL catalog entry; throws Error for unknown names.
std::string catalog_formula(std::string_view name);
/// The scenario each catalog entry is meant for.
ScenarioSpec catalog_scenario(std::string_view name);

/// Runs a catalog property on `spec`. `bound` is used by P5 only.
CheckResult check_property_catalog(const ScenarioSpec& spec, std::string_view name, TimeValue bound = 15_tu,
                                   const ExploreOptions& opt = {});

}  // namespace crosslight
