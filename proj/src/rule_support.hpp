#pragma once

// Helpers shared by the rule families.

#include <string_view>
#include <variant>

#include "crosslight/configuration.hpp"
#include "crosslight/kernel.hpp"

namespace crosslight::detail {

/// Appends a copy of `c` as a new successor labelled `rule` and returns it
/// for editing. The reference is valid until the next call.
inline Configuration& emit(Successors& out, std::string_view rule, const Configuration& c) {
    out.push_back({rule, c});
    return out.back().next;
}

/// Like emit, with message `msg_index` consumed.
inline Configuration& emit_consuming(Successors& out, std::string_view rule, const Configuration& c,
                                     std::size_t msg_index) {
    Configuration& n = emit(out, rule, c);
    n.messages.erase(n.messages.begin() + static_cast<std::ptrdiff_t>(msg_index));
    return n;
}

template <class State>
State& state_at(Configuration& c, std::size_t object_index) {
    return std::get<State>(c.objects[object_index].state);
}

inline std::size_t index_of(const Configuration& c, const Object* o) {
    return static_cast<std::size_t>(o - c.objects.data());
}

/// Sends `kind(sibling, self)` to the three other light controllers.
inline void notify_siblings(Configuration& n, const Oid& self, MsgKind kind) {
    for (Oid& s : siblings(self)) n.send({kind, std::move(s), self, {}});
}

/// Receiver object of a message: newPed is addressed to the pedestrian stop
/// but handled by the same-direction pedestrian light.
inline const Object* receiver(const Configuration& c, const Message& m) {
    if (m.to.kind == OidKind::pedStop) return c.find(Oid::ped_light(m.to.xing, m.to.dir));
    return c.find(m.to);
}

}  // namespace crosslight::detail
