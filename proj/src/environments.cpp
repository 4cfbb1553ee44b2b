#include "crosslight/environments.hpp"

#include <cstddef>

#include "rule_support.hpp"

namespace crosslight {

using detail::emit;
using detail::state_at;

void periodic_env_rules(const Configuration& c, Successors& out) {
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
        const auto* s = std::get_if<PeriodicEnvState>(&c.objects[i].state);
        if (!s || !s->time_to_next.is_zero() || !s->possible_events) continue;
        const auto& events = *s->possible_events;
        if (events.size() >= 32) throw Error("periodic environment with too many possible events");
        const std::size_t subsets = std::size_t{1} << events.size();
        for (std::size_t mask = 0; mask < subsets; ++mask) {
            Configuration& n = emit(out, "generateSubsetAndReset", c);
            state_at<PeriodicEnvState>(n, i).time_to_next = s->frequency;
            for (std::size_t k = 0; k < events.size(); ++k)
                if (mask & (std::size_t{1} << k)) n.send(events[k]);
        }
    }
}

void emergency_env_rules(const Configuration& c, Successors& out) {
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
        const auto* s = std::get_if<EmergencyEnvState>(&c.objects[i].state);
        if (!s || !s->time_to_next.is_zero()) continue;
        const std::string& xing = c.objects[i].id.xing;

        Configuration& skip = emit(out, "emergencySkip", c);
        state_at<EmergencyEnvState>(skip, i).time_to_next = s->frequency;

        Configuration& n = emit(out, s->emergency_on ? "emergencyOver" : "emergencyStart", c);
        auto& ns = state_at<EmergencyEnvState>(n, i);
        ns.time_to_next = s->frequency;
        ns.emergency_on = !s->emergency_on;
        n.send(s->emergency_on ? Message::emergency_over_xing(xing) : Message::emergency_xing(xing));
    }
}

void failure_env_rules(const Configuration& c, Successors& out) {
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
        const auto* s = std::get_if<FailureEnvState>(&c.objects[i].state);
        if (!s || !s->timer.is_zero()) continue;
        const Oid device = c.objects[i].id.monitored_device();

        Configuration& skip = emit(out, s->down ? "repairSkip" : "failureSkip", c);
        state_at<FailureEnvState>(skip, i).timer = s->frequency;

        if (s->down) {
            Configuration& n = emit(out, "repairDevice", c);
            auto& ns = state_at<FailureEnvState>(n, i);
            ns.down = false;
            ns.timer = s->min_separation;
            n.send(Message::repaired(device, device));
        } else {
            Configuration& n = emit(out, "failDevice", c);
            auto& ns = state_at<FailureEnvState>(n, i);
            ns.down = true;
            ns.timer = s->frequency;
            n.send(Message::error(device, device));
        }
    }
}

}  // namespace crosslight
