#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "crosslight/ids.hpp"
#include "crosslight/message.hpp"
#include "crosslight/time.hpp"

namespace crosslight {

enum class Color : std::uint8_t { red, yellow, green, blinking, off, blinkingYellow, blinkingRed };

std::string_view to_string(Color c);

/// Set of colors shown at once (European lights show red and yellow together).
class ColorSet {
public:
    constexpr ColorSet() = default;
    constexpr ColorSet(Color c) : bits_(bit(c)) {}  // NOLINT: a single color is a singleton set
    constexpr ColorSet(Color a, Color b) : bits_(bit(a) | bit(b)) {}

    constexpr bool contains(Color c) const { return (bits_ & bit(c)) != 0; }
    constexpr std::uint8_t bits() const { return bits_; }
    static constexpr ColorSet from_bits(std::uint8_t b) {
        ColorSet s;
        s.bits_ = b;
        return s;
    }
    friend constexpr bool operator==(ColorSet, ColorSet) = default;

    std::string to_string() const;

private:
    static constexpr std::uint8_t bit(Color c) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(c)); }
    std::uint8_t bits_ = 0;
};

enum class Regime : std::uint8_t { american, european };

std::string_view to_string(Regime r);

/// Rule patches used only to check that properties are not vacuously true.
enum class Mutation : std::uint8_t {
    none,
    /// Safety margin removed from goRed/redToSafetyMargin, green extended by
    /// yellow time plus two margins so consecutive greens overlap.
    no_safety_margin,
    /// redToGreen also fires straight from state red.
    red_to_green_direct,
};

std::string_view to_string(Mutation m);

/// Tunable controller parameters. Defaults reproduce the reference deployment.
struct Params {
    Regime regime = Regime::american;
    TimeValue delta = 1_tu;
    TimeValue safety_margin = 1_tu;
    TimeValue yellow_time = 1_tu;
    TimeValue walk_time = 2_tu;
    Mutation mutation = Mutation::none;

    TimeValue min_green_time() const { return walk_time + 1_tu; }
    TimeValue min_red_time() const { return safety_margin + min_green_time() + yellow_time + safety_margin; }
    /// Red time left after goRed: the check for waiting traffic happens this
    /// long before the light may turn green.
    TimeValue red_hold(TimeValue red_time) const { return monus(red_time, delta + yellow_time + safety_margin); }
    /// Red time of a light restarting while the other direction just went
    /// green, matching the offset between the two lights in an initial state.
    TimeValue restart_red_hold(TimeValue red_time) const {
        return monus(red_time, delta + yellow_time + safety_margin + safety_margin);
    }

    /// Throws std::invalid_argument when a duration is zero or infinite.
    void validate() const;
};

enum class CarPhase : std::uint8_t { red, toRedYellow, toGreen, green, yellow, emergency, error, errorRecovery };

std::string_view to_string(CarPhase p);

/// Internal state of a car light controller. error(n) carries its count.
struct CLState {
    CarPhase phase = CarPhase::red;
    std::uint8_t errors = 0;

    constexpr bool is_normal() const { return phase <= CarPhase::yellow; }
    constexpr bool is_error() const { return phase == CarPhase::error; }
    friend constexpr bool operator==(CLState, CLState) = default;
    std::string to_string() const;
};

struct CarLightState {
    ColorSet lights = Color::red;
    TimeValue timer;
    CLState state;
    TimeValue red_time = 1_tu;
    TimeValue green_time = 1_tu;
    bool ped_waiting = false;
    bool default_starter = false;
    friend bool operator==(const CarLightState&, const CarLightState&) = default;
};

enum class PedPhase : std::uint8_t { normal, emergency, error, errorRecovery };

std::string_view to_string(PedPhase p);

struct PLMode {
    PedPhase phase = PedPhase::normal;
    std::uint8_t errors = 0;

    constexpr bool is_error_or_recovery() const { return phase == PedPhase::error || phase == PedPhase::errorRecovery; }
    friend constexpr bool operator==(PLMode, PLMode) = default;
    std::string to_string() const;
};

struct PedLightState {
    TimeValue timer = kInf;
    Color color = Color::red;
    bool button_lit = false;
    PLMode mode;
    friend bool operator==(const PedLightState&, const PedLightState&) = default;
};

struct ApproachState {
    bool cars_present = false;
    friend bool operator==(const ApproachState&, const ApproachState&) = default;
};

/// Emits an arbitrary subset of `possible_events` every `frequency` units.
struct PeriodicEnvState {
    TimeValue frequency = 1_tu;
    TimeValue time_to_next;
    std::shared_ptr<const std::vector<Message>> possible_events;
    friend bool operator==(const PeriodicEnvState& a, const PeriodicEnvState& b) {
        return a.frequency == b.frequency && a.time_to_next == b.time_to_next &&
               (a.possible_events == b.possible_events ||
                (a.possible_events && b.possible_events && *a.possible_events == *b.possible_events));
    }
};

/// Alternately may emit emergency / emergency-over signals for one crossing.
struct EmergencyEnvState {
    TimeValue frequency = 1_tu;
    TimeValue time_to_next;
    bool emergency_on = false;
    friend bool operator==(const EmergencyEnvState&, const EmergencyEnvState&) = default;
};

/// Failure injector for one device. While up it may fail the device at each
/// decision point; while down it may repair it. After a repair the next
/// decision point is `min_separation` later.
struct FailureEnvState {
    TimeValue frequency = 1_tu;
    TimeValue min_separation = 1_tu;
    bool down = false;
    TimeValue timer;
    friend bool operator==(const FailureEnvState&, const FailureEnvState&) = default;
};

using ObjectState =
    std::variant<CarLightState, PedLightState, ApproachState, PeriodicEnvState, EmergencyEnvState, FailureEnvState>;

struct Object {
    Oid id;
    ObjectState state;
    friend bool operator==(const Object&, const Object&) = default;
};

/// Attribute name/value pairs of an object state, in declaration order.
std::vector<std::pair<std::string_view, std::string>> attributes(const ObjectState& s);

}  // namespace crosslight
