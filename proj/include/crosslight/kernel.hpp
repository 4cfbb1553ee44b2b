#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "crosslight/configuration.hpp"
#include "crosslight/objects.hpp"
#include "crosslight/time.hpp"

namespace crosslight {

/// One rule application. `rule` points at a static label.
struct Successor {
    std::string_view rule;
    Configuration next;
};

using Successors = std::vector<Successor>;

/// A successor together with its canonical key; `duration` is nonzero only
/// for tick steps.
struct KeyedSuccessor {
    std::string_view rule;
    TimeValue duration;
    Configuration next;
    std::string key;
};

inline constexpr std::string_view kTickRule = "tick";

/// Longest admissible time advance: zero while any message is pending or any
/// timer has expired, otherwise the nearest finite deadline (infinity if none).
TimeValue max_time_elapse(const Configuration& c);

/// Advances every finite timer by `d`. Throws std::invalid_argument when `d`
/// is zero, infinite, or would skip past a deadline.
Configuration tick(const Configuration& c, TimeValue d);

/// All zero-time rule applications, normalized, without duplicates, ordered
/// by (rule label, canonical key).
std::vector<KeyedSuccessor> instantaneous_successors(const Configuration& c, const Params& p);

/// Instantaneous successors followed by the maximal tick, when that tick is
/// finite and nonzero.
std::vector<KeyedSuccessor> all_successors(const Configuration& c, const Params& p);

}  // namespace crosslight
