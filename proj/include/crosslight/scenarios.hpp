#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "crosslight/configuration.hpp"
#include "crosslight/objects.hpp"

namespace crosslight {

struct IntersectionSpec {
    std::string xing;
    TimeValue green_time;
    TimeValue red_time;
    friend bool operator==(const IntersectionSpec&, const IntersectionSpec&) = default;
};

/// Parameters of an initial state. The primary intersection gets the
/// emergency and failure environments; extra intersections only get their
/// own car/pedestrian generator.
struct ScenarioSpec {
    std::string xing = "Spitsbergen";
    TimeValue green_time = 5_tu;
    TimeValue red_time = 6_tu;
    TimeValue emergency_period = 0_tu;  // 0: no emergencies
    int car_faults = 0;
    int ped_faults = 0;
    TimeValue fail_frequency = 1_tu;
    TimeValue fail_separation = 1_tu;
    Params params;
    std::vector<IntersectionSpec> extra_intersections;

    friend bool operator==(const ScenarioSpec& a, const ScenarioSpec& b) {
        return a.xing == b.xing && a.green_time == b.green_time && a.red_time == b.red_time &&
               a.emergency_period == b.emergency_period && a.car_faults == b.car_faults &&
               a.ped_faults == b.ped_faults && a.fail_frequency == b.fail_frequency &&
               a.fail_separation == b.fail_separation && a.params.regime == b.params.regime &&
               a.params.delta == b.params.delta && a.params.safety_margin == b.params.safety_margin &&
               a.params.yellow_time == b.params.yellow_time && a.params.walk_time == b.params.walk_time &&
               a.params.mutation == b.params.mutation && a.extra_intersections == b.extra_intersections;
    }

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
    /// Names of all intersections, primary first.
    std::vector<std::string> intersections() const;
};

/// The eight-argument form `xing, green, red, emergencyPeriod, carFaults,
/// pedFaults, failFrequency, failSeparation`.
ScenarioSpec make_init(std::string xing, unsigned green, unsigned red, unsigned emergency_period, int car_faults,
                       int ped_faults, unsigned fail_frequency, unsigned fail_separation);

/// Parses "X,5,6,2,0,0,1,1" into make_init's arguments.
ScenarioSpec parse_init_args(std::string_view text);

/// Car lights, pedestrian lights and approaches of one intersection, with
/// `prioritized` green first.
Configuration build_lights(const std::string& xing, Direction prioritized, TimeValue green_time, TimeValue red_time,
                           const Params& p);

/// Environment objects of a scenario.
Configuration build_env(const ScenarioSpec& spec);

/// Lights of every intersection plus the environments, normalized.
Configuration build_init(const ScenarioSpec& spec);

/// Scenario file: `key = value` lines, `#` comments. Throws Error naming the
/// line on unknown keys or bad values.
ScenarioSpec parse_scenario(std::string_view text);
ScenarioSpec load_scenario(const std::string& path);
std::string write_scenario(const ScenarioSpec& spec);

/// One-line summary, e.g. `init("X", 5, 6, 0, 0, 0, 1, 1)`.
std::string describe(const ScenarioSpec& spec);

}  // namespace crosslight
