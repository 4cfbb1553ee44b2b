#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace crosslight {

enum class Direction : std::uint8_t { NS = 0, EW = 1 };

constexpr Direction opposite(Direction d) { return d == Direction::NS ? Direction::EW : Direction::NS; }

std::string_view to_string(Direction d);

// Enumerator order is the lexicographic order of the constructor names, which
// is the object order used by canonical keys.
enum class OidKind : std::uint8_t {
    approach,
    carLight,
    crossing,  // message address only: a whole intersection
    envCarsPeds,
    envEmergency,
    envFailure,
    pedLight,
    pedStop,
};

std::string_view to_string(OidKind k);

/// Object identifier. `target` is only meaningful for envFailure, where it
/// names the kind of the monitored device (carLight or pedLight) and `dir`
/// its direction.
struct Oid {
    OidKind kind = OidKind::carLight;
    Direction dir = Direction::NS;
    OidKind target = OidKind::carLight;
    std::string xing;

    static Oid car_light(std::string xing, Direction d) { return {OidKind::carLight, d, OidKind::carLight, std::move(xing)}; }
    static Oid ped_light(std::string xing, Direction d) { return {OidKind::pedLight, d, OidKind::carLight, std::move(xing)}; }
    static Oid approach(std::string xing, Direction d) { return {OidKind::approach, d, OidKind::carLight, std::move(xing)}; }
    static Oid ped_stop(std::string xing, Direction d) { return {OidKind::pedStop, d, OidKind::carLight, std::move(xing)}; }
    static Oid crossing(std::string xing) { return {OidKind::crossing, Direction::NS, OidKind::carLight, std::move(xing)}; }
    static Oid env_cars_peds(std::string xing) { return {OidKind::envCarsPeds, Direction::NS, OidKind::carLight, std::move(xing)}; }
    static Oid env_emergency(std::string xing) { return {OidKind::envEmergency, Direction::NS, OidKind::carLight, std::move(xing)}; }
    static Oid env_failure(const Oid& device) { return {OidKind::envFailure, device.dir, device.kind, device.xing}; }

    bool is_device() const { return kind == OidKind::carLight || kind == OidKind::pedLight; }
    bool has_direction() const {
        return kind == OidKind::approach || kind == OidKind::carLight || kind == OidKind::pedLight ||
               kind == OidKind::pedStop || kind == OidKind::envFailure;
    }

    /// Device watched by an envFailure object.
    Oid monitored_device() const { return {target, dir, OidKind::carLight, xing}; }

    friend bool operator==(const Oid& a, const Oid& b) {
        return a.kind == b.kind && a.dir == b.dir && a.xing == b.xing &&
               (a.kind != OidKind::envFailure || a.target == b.target);
    }
    friend std::strong_ordering operator<=>(const Oid& a, const Oid& b);

    std::string to_string() const;
};

/// Same-direction pedestrian light of a car light.
Oid pl(const Oid& car_light);
/// Same-direction car light of a pedestrian light.
Oid cl(const Oid& ped_light);
/// Same kind of device, other direction.
Oid opposite(const Oid& device);

/// The three other light controllers of the intersection.
inline std::array<Oid, 3> siblings(const Oid& device) {
    const Oid other = opposite(device);
    if (device.kind == OidKind::carLight) return {other, pl(device), pl(other)};
    return {other, cl(device), cl(other)};
}

}  // namespace crosslight
