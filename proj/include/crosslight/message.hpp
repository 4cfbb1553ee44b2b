#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "crosslight/ids.hpp"
#include "crosslight/time.hpp"

namespace crosslight {

enum class MsgKind : std::uint8_t {
    continueGreen,
    pedGo,
    pedsWaiting,
    newPed,
    newCars,
    emergencyXing,
    emergencyOverXing,
    emergencyDev,
    emergencyOverDev,
    resumeRed,
    resumeGreen,
    reStartRed,
    reStartGreen,
    error,
    repaired,
};

inline constexpr int kMsgKindCount = 15;

std::string_view to_string(MsgKind k);

/// A message in flight. `subject` is the failed or repaired device for
/// error/repaired; `duration` is the walk window of pedGo/resumeGreen.
struct Message {
    MsgKind kind = MsgKind::continueGreen;
    Oid to;
    Oid subject;
    TimeValue duration;

    static Message continue_green(Oid car) { return {MsgKind::continueGreen, std::move(car), {}, {}}; }
    static Message ped_go(Oid ped, TimeValue d) { return {MsgKind::pedGo, std::move(ped), {}, d}; }
    static Message peds_waiting(Oid car) { return {MsgKind::pedsWaiting, std::move(car), {}, {}}; }
    static Message new_ped(Oid stop) { return {MsgKind::newPed, std::move(stop), {}, {}}; }
    static Message new_cars(Oid approach) { return {MsgKind::newCars, std::move(approach), {}, {}}; }
    static Message emergency_xing(std::string xing) { return {MsgKind::emergencyXing, Oid::crossing(std::move(xing)), {}, {}}; }
    static Message emergency_over_xing(std::string xing) {
        return {MsgKind::emergencyOverXing, Oid::crossing(std::move(xing)), {}, {}};
    }
    static Message emergency_dev(Oid dev) { return {MsgKind::emergencyDev, std::move(dev), {}, {}}; }
    static Message emergency_over_dev(Oid dev) { return {MsgKind::emergencyOverDev, std::move(dev), {}, {}}; }
    static Message resume_red(Oid ped) { return {MsgKind::resumeRed, std::move(ped), {}, {}}; }
    static Message resume_green(Oid ped, TimeValue d) { return {MsgKind::resumeGreen, std::move(ped), {}, d}; }
    static Message restart_red(Oid car) { return {MsgKind::reStartRed, std::move(car), {}, {}}; }
    static Message restart_green(Oid car) { return {MsgKind::reStartGreen, std::move(car), {}, {}}; }
    static Message error(Oid to, Oid failed) { return {MsgKind::error, std::move(to), std::move(failed), {}}; }
    static Message repaired(Oid to, Oid fixed) { return {MsgKind::repaired, std::move(to), std::move(fixed), {}}; }

    bool has_subject() const { return kind == MsgKind::error || kind == MsgKind::repaired; }
    bool has_duration() const { return kind == MsgKind::pedGo || kind == MsgKind::resumeGreen; }

    friend bool operator==(const Message& a, const Message& b) {
        return a.kind == b.kind && a.to == b.to && (!a.has_subject() || a.subject == b.subject) &&
               (!a.has_duration() || a.duration == b.duration);
    }
    friend std::strong_ordering operator<=>(const Message& a, const Message& b);

    std::string to_string() const;
};

}  // namespace crosslight
