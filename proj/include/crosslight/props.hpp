#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "crosslight/configuration.hpp"

namespace crosslight {

enum class PropKind : std::uint8_t {
    pedLightRed,
    pedArriving,
    buttonPushed,
    carLightRed,
    carLightGreen,
    carWaiting,
    carArriving,
    walking,
    driving,
    failure,
    repair,
};

std::string_view to_string(PropKind k);

/// Atomic proposition over one intersection. An empty `xing` stands for the
/// scenario's primary intersection until bound. `dir` is ignored by
/// failure/repair.
struct AtomicProp {
    PropKind kind = PropKind::pedLightRed;
    std::string xing;
    Direction dir = Direction::NS;

    bool has_direction() const { return kind != PropKind::failure && kind != PropKind::repair; }
    friend bool operator==(const AtomicProp& a, const AtomicProp& b) {
        return a.kind == b.kind && a.xing == b.xing && (!a.has_direction() || a.dir == b.dir);
    }
    std::string to_string() const;
};

/// Builds a proposition from its written form, e.g. name "walking" with
/// arguments {"NS"} or {"\"X\"", "NS"}. Throws Error on unknown names or
/// malformed arguments.
AtomicProp make_prop(std::string_view name, const std::vector<std::string>& args);

/// Fills in the primary intersection where none was given.
AtomicProp bind(AtomicProp a, const std::string& default_xing);

/// Throws Error if `a` names an intersection that `c` does not contain.
void check_resolvable(const Configuration& c, const AtomicProp& a);

bool eval_prop(const Configuration& c, const AtomicProp& a);

}  // namespace crosslight
