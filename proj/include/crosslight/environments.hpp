#pragma once

#include "crosslight/configuration.hpp"
#include "crosslight/kernel.hpp"

namespace crosslight {

/// Every subset of possibleEvents (empty and full included) when the timer expires.
void periodic_env_rules(const Configuration& c, Successors& out);

/// Skip, or emit the next signal of the emergency / emergency-over alternation.
void emergency_env_rules(const Configuration& c, Successors& out);

/// Skip, or fail (while up) / repair (while down) the monitored device.
void failure_env_rules(const Configuration& c, Successors& out);

}  // namespace crosslight
