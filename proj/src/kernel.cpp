#include "crosslight/kernel.hpp"

#include <algorithm>
#include <stdexcept>
#include <type_traits>

#include "crosslight/devices.hpp"
#include "crosslight/environments.hpp"

namespace crosslight {

namespace {

template <class State>
auto timer_of(State& s) {
    using Ptr = std::conditional_t<std::is_const_v<State>, const TimeValue*, TimeValue*>;
    return std::visit(
        [](auto& st) -> Ptr {
            using S = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<S, CarLightState> || std::is_same_v<S, PedLightState> ||
                          std::is_same_v<S, FailureEnvState>)
                return &st.timer;
            else if constexpr (std::is_same_v<S, PeriodicEnvState> || std::is_same_v<S, EmergencyEnvState>)
                return &st.time_to_next;
            else
                return nullptr;
        },
        s);
}

}  // namespace

TimeValue max_time_elapse(const Configuration& c) {
    if (!c.messages.empty()) return 0_tu;
    TimeValue best = kInf;
    for (const Object& o : c.objects) {
        const TimeValue* t = timer_of(o.state);
        if (t && *t < best) best = *t;
    }
    return best;
}

Configuration tick(const Configuration& c, TimeValue d) {
    if (d.is_zero() || d.is_infinite()) throw std::invalid_argument("tick duration must be finite and nonzero");
    if (d > max_time_elapse(c)) throw std::invalid_argument("tick of " + d.to_string() + " skips a deadline");
    Configuration n = c;
    for (Object& o : n.objects)
        if (TimeValue* t = timer_of(o.state); t && t->is_finite()) *t = monus(*t, d);
    return n;
}

std::vector<KeyedSuccessor> instantaneous_successors(const Configuration& c, const Params& p) {
    Successors raw;
    car_light_normal_rules(c, p, raw);
    ped_light_normal_rules(c, p, raw);
    approach_rules(c, raw);
    emergency_rules(c, p, raw);
    failure_rules(c, p, raw);
    periodic_env_rules(c, raw);
    emergency_env_rules(c, raw);
    failure_env_rules(c, raw);

    std::vector<KeyedSuccessor> out;
    out.reserve(raw.size());
    for (Successor& s : raw) {
        Configuration n = normalize(std::move(s.next));
        std::string key = canonical_key(n);
        out.push_back({s.rule, 0_tu, std::move(n), std::move(key)});
    }
    std::sort(out.begin(), out.end(), [](const KeyedSuccessor& a, const KeyedSuccessor& b) {
        if (a.rule != b.rule) return a.rule < b.rule;
        return a.key < b.key;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const KeyedSuccessor& a, const KeyedSuccessor& b) {
                              return a.rule == b.rule && a.key == b.key;
                          }),
              out.end());
    return out;
}

std::vector<KeyedSuccessor> all_successors(const Configuration& c, const Params& p) {
    std::vector<KeyedSuccessor> out = instantaneous_successors(c, p);
    const TimeValue d = max_time_elapse(c);
    if (d.is_finite() && !d.is_zero()) {
        Configuration n = tick(c, d);
        std::string key = canonical_key(n);
        out.push_back({kTickRule, d, std::move(n), std::move(key)});
    }
    return out;
}

}  // namespace crosslight
