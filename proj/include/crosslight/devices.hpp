#pragma once

#include "crosslight/configuration.hpp"
#include "crosslight/kernel.hpp"
#include "crosslight/objects.hpp"

namespace crosslight {

// Rule families of the three device automata. Each appends every enabled
// application to `out`; successors are not yet normalized.

/// Round cycle of a car light, pedestrian requests and continueGreen.
void car_light_normal_rules(const Configuration& c, const Params& p, Successors& out);

/// Pedestrian light: walk window, blinking, button presses.
void ped_light_normal_rules(const Configuration& c, const Params& p, Successors& out);

/// Car approach sensor: arrivals and (spontaneous) clearing on green.
void approach_rules(const Configuration& c, Successors& out);

/// Emergency clearance and restart for car and pedestrian lights.
void emergency_rules(const Configuration& c, const Params& p, Successors& out);

/// Failure counting, fan-out, recovery, and message absorption in error modes.
void failure_rules(const Configuration& c, const Params& p, Successors& out);

}  // namespace crosslight
