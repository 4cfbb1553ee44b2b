#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "crosslight/checker.hpp"
#include "crosslight/scenarios.hpp"

namespace crosslight {

/// One trace line: `t=<time> rule=<label>` followed by ` | <oid>: attr=old→new`
/// for every changed object and ` | -msg` / ` | +msg` for consumed and sent
/// messages. Ticks are labelled `tick(<d>)`.
std::string render_step(const Configuration& before, const Configuration& after, std::string_view rule,
                        TimeValue duration, TimeValue now);

/// Trace file text: a header carrying the scenario, `t=0 rule=init`, one line
/// per step, and `CYCLE-START` after the line of the state the cycle returns to.
std::string write_trace(const ScenarioSpec& spec, const Trace& trace);

struct ReplayResult {
    bool ok = false;
    std::size_t steps = 0;
    std::string message;
};

/// Re-executes a trace file through the kernel. Every step must match a
/// successor of the current state exactly, and a cycle must close on the
/// marked state.
ReplayResult replay_trace(std::string_view text);

/// A pseudo-random run of `steps` transitions; the same seed gives the same run.
Trace simulate(const ScenarioSpec& spec, std::size_t steps, std::uint64_t seed);

}  // namespace crosslight
