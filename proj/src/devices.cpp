#include "crosslight/devices.hpp"

#include "rule_support.hpp"

namespace crosslight {

using detail::emit;
using detail::emit_consuming;
using detail::index_of;
using detail::notify_siblings;
using detail::receiver;
using detail::state_at;

namespace {

bool in_error_mode(const CarLightState& s) {
    return s.state.phase == CarPhase::error || s.state.phase == CarPhase::errorRecovery;
}

bool cars_waiting(const Configuration& c, const Oid& car) {
    const auto* a = c.state_of<ApproachState>(Oid::approach(car.xing, car.dir));
    return a && a->cars_present;
}

void set_green(CarLightState& s, TimeValue timer) {
    s.state = {CarPhase::green, 0};
    s.lights = Color::green;
    s.timer = timer;
    s.ped_waiting = false;
}

void set_red(CarLightState& s, TimeValue timer) {
    s.state = {CarPhase::red, 0};
    s.lights = Color::red;
    s.timer = timer;
}

// Green-phase entry shared by redToGreen and the mutated red-to-green shortcut.
void go_green(const Configuration& c, const Params& p, std::size_t i, std::string_view rule, Successors& out) {
    const auto& s = std::get<CarLightState>(c.objects[i].state);
    const Oid& self = c.objects[i].id;
    TimeValue green = s.green_time;
    if (p.mutation == Mutation::no_safety_margin) green = green + p.yellow_time + p.safety_margin + p.safety_margin;
    Configuration& n = emit(out, rule, c);
    set_green(state_at<CarLightState>(n, i), green);
    if (s.ped_waiting) n.send(Message::ped_go(pl(self), green));
}

void car_timer_rules(const Configuration& c, const Params& p, std::size_t i, Successors& out) {
    const auto& s = std::get<CarLightState>(c.objects[i].state);
    const Oid& self = c.objects[i].id;
    switch (s.state.phase) {
        case CarPhase::red: {
            const bool cars = cars_waiting(c, self);
            if (!cars && !s.ped_waiting) {
                Configuration& n = emit(out, "dontGoGreen", c);
                state_at<CarLightState>(n, i).timer = s.green_time + s.red_time + p.yellow_time;
                n.send(Message::continue_green(opposite(self)));
            } else {
                Configuration& n = emit(out, "redToSafetyMargin", c);
                auto& ns = state_at<CarLightState>(n, i);
                if (p.regime == Regime::american) {
                    ns.state.phase = CarPhase::toGreen;
                    ns.timer = p.mutation == Mutation::no_safety_margin ? p.delta + p.yellow_time
                                                                        : p.delta + p.yellow_time + p.safety_margin;
                } else {
                    ns.state.phase = CarPhase::toRedYellow;
                    ns.timer = p.delta + p.yellow_time;
                }
            }
            if (p.mutation == Mutation::red_to_green_direct) go_green(c, p, i, "redToGreen", out);
            break;
        }
        case CarPhase::toRedYellow: {
            Configuration& n = emit(out, "redYellowToGreen", c);
            auto& ns = state_at<CarLightState>(n, i);
            ns.lights = ColorSet(Color::red, Color::yellow);
            ns.state.phase = CarPhase::toGreen;
            ns.timer = p.mutation == Mutation::no_safety_margin ? 0_tu : p.safety_margin;
            break;
        }
        case CarPhase::toGreen: go_green(c, p, i, "redToGreen", out); break;
        case CarPhase::green: {
            Configuration& n = emit(out, "greenToYellow", c);
            auto& ns = state_at<CarLightState>(n, i);
            ns.state.phase = CarPhase::yellow;
            ns.lights = Color::yellow;
            ns.timer = p.yellow_time;
            break;
        }
        case CarPhase::yellow: {
            Configuration& n = emit(out, "goRed", c);
            const TimeValue hold = p.mutation == Mutation::no_safety_margin
                                       ? monus(s.red_time, p.delta + p.yellow_time)
                                       : p.red_hold(s.red_time);
            set_red(state_at<CarLightState>(n, i), hold);
            break;
        }
        default: break;  // emergency and error phases: emergency_rules / failure_rules
    }
}

void ped_timer_rules(const Configuration& c, const Params& p, std::size_t i, Successors& out) {
    const auto& s = std::get<PedLightState>(c.objects[i].state);
    if (s.color == Color::green) {
        Configuration& n = emit(out, "startBlinking", c);
        auto& ns = state_at<PedLightState>(n, i);
        ns.timer = p.walk_time;
        ns.color = Color::blinking;
    } else if (s.color == Color::blinking) {
        Configuration& n = emit(out, "stop", c);
        auto& ns = state_at<PedLightState>(n, i);
        ns.timer = kInf;
        ns.color = Color::red;
    }
}

}  // namespace

void car_light_normal_rules(const Configuration& c, const Params& p, Successors& out) {
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
        const auto* s = std::get_if<CarLightState>(&c.objects[i].state);
        if (s && s->timer.is_zero()) car_timer_rules(c, p, i, out);
    }
    for (std::size_t j = 0; j < c.messages.size(); ++j) {
        const Message& m = c.messages[j];
        if (m.kind != MsgKind::pedsWaiting && m.kind != MsgKind::continueGreen) continue;
        const Object* o = receiver(c, m);
        const auto* s = o ? std::get_if<CarLightState>(&o->state) : nullptr;
        if (!s || in_error_mode(*s)) continue;
        const std::size_t i = index_of(c, o);
        const Oid& self = o->id;

        if (m.kind == MsgKind::pedsWaiting) {
            if (s->state.phase == CarPhase::green && s->timer >= p.walk_time) {
                Configuration& n = emit_consuming(out, "buttonPressedTurnOn", c, j);
                n.send(Message::ped_go(pl(self), s->timer));
            } else {
                Configuration& n = emit_consuming(out, "rememberButtonPressed", c, j);
                state_at<CarLightState>(n, i).ped_waiting = true;
            }
        } else if (s->state.is_normal()) {
            Configuration& n = emit_consuming(out, "continueGreen", c, j);
            auto& ns = state_at<CarLightState>(n, i);
            ns.timer = s->timer + s->green_time + s->red_time + p.yellow_time;
            ns.ped_waiting = false;
            if (s->ped_waiting) n.send(Message::ped_go(pl(self), ns.timer));
        }
    }
}

void ped_light_normal_rules(const Configuration& c, const Params& p, Successors& out) {
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
        const auto* s = std::get_if<PedLightState>(&c.objects[i].state);
        if (s && s->timer.is_zero()) ped_timer_rules(c, p, i, out);
    }
    for (std::size_t j = 0; j < c.messages.size(); ++j) {
        const Message& m = c.messages[j];
        if (m.kind != MsgKind::pedGo && m.kind != MsgKind::newPed) continue;
        const Object* o = receiver(c, m);
        const auto* s = o ? std::get_if<PedLightState>(&o->state) : nullptr;
        if (!s || s->mode.is_error_or_recovery()) continue;
        const std::size_t i = index_of(c, o);

        if (m.kind == MsgKind::pedGo) {
            if (s->mode.phase != PedPhase::normal) continue;
            Configuration& n = emit_consuming(out, "turnGreen", c, j);
            auto& ns = state_at<PedLightState>(n, i);
            ns.timer = monus(m.duration, p.walk_time);
            ns.color = Color::green;
            ns.button_lit = false;
        } else if (!s->button_lit && s->color != Color::green) {
            Configuration& n = emit_consuming(out, "newPedestrian1", c, j);
            state_at<PedLightState>(n, i).button_lit = true;
            n.send(Message::peds_waiting(cl(o->id)));
        } else {
            emit_consuming(out, "newPedestrian2", c, j);
        }
    }
}

void approach_rules(const Configuration& c, Successors& out) {
    for (std::size_t j = 0; j < c.messages.size(); ++j) {
        const Message& m = c.messages[j];
        if (m.kind != MsgKind::newCars) continue;
        const Object* o = c.find(m.to);
        if (!o || !std::holds_alternative<ApproachState>(o->state)) continue;
        Configuration& n = emit_consuming(out, "newCars", c, j);
        state_at<ApproachState>(n, index_of(c, o)).cars_present = true;
    }
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
        const auto* a = std::get_if<ApproachState>(&c.objects[i].state);
        if (!a || !a->cars_present) continue;
        const Oid& id = c.objects[i].id;
        const auto* light = c.state_of<CarLightState>(Oid::car_light(id.xing, id.dir));
        if (!light || !light->lights.contains(Color::green)) continue;
        Configuration& n = emit(out, "allCarsPass", c);
        state_at<ApproachState>(n, i).cars_present = false;
    }
}

void emergency_rules(const Configuration& c, const Params& p, Successors& out) {
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
        const auto* s = std::get_if<CarLightState>(&c.objects[i].state);
        if (s && s->state.phase == CarPhase::emergency && s->timer.is_zero()) {
            Configuration& n = emit(out, "emergencyYellowToRed", c);
            auto& ns = state_at<CarLightState>(n, i);
            ns.lights = Color::red;
            ns.timer = kInf;
        }
    }

    for (std::size_t j = 0; j < c.messages.size(); ++j) {
        const Message& m = c.messages[j];
        const Object* o = receiver(c, m);
        if (!o) continue;
        const std::size_t i = index_of(c, o);
        const Oid& self = o->id;

        if (const auto* s = std::get_if<CarLightState>(&o->state)) {
            const bool normal = s->state.is_normal();
            const bool emergency = s->state.phase == CarPhase::emergency;
            switch (m.kind) {
                case MsgKind::emergencyDev:
                    if (normal) {
                        const CarPhase was = s->state.phase;
                        Configuration& n = emit_consuming(out, "newEmergency", c, j);
                        auto& ns = state_at<CarLightState>(n, i);
                        ns.state = {CarPhase::emergency, 0};
                        ns.timer = was == CarPhase::green ? p.yellow_time : was == CarPhase::yellow ? s->timer : kInf;
                        ns.lights = (was == CarPhase::green || was == CarPhase::yellow) ? Color::yellow : Color::red;
                        n.send(Message::emergency_dev(pl(self)));
                    } else if (emergency) {
                        emit_consuming(out, "ignoreEmergency", c, j);
                    }
                    break;
                case MsgKind::emergencyOverDev:
                    if (emergency) {
                        if (!s->default_starter) {
                            emit_consuming(out, "emergencyOverOther", c, j);
                        } else if (cars_waiting(c, self) || s->ped_waiting) {
                            Configuration& n = emit_consuming(out, "emergencyOverMainDirectionStart", c, j);
                            set_green(state_at<CarLightState>(n, i), s->green_time);
                            n.send(Message::restart_red(opposite(self)));
                            n.send(s->ped_waiting ? Message::resume_green(pl(self), s->green_time)
                                                  : Message::resume_red(pl(self)));
                        } else {
                            Configuration& n = emit_consuming(out, "emergencyOverMainDirectionYield", c, j);
                            set_red(state_at<CarLightState>(n, i), p.restart_red_hold(s->red_time));
                            n.send(Message::restart_green(opposite(self)));
                            n.send(Message::resume_red(pl(self)));
                        }
                    } else if (normal) {
                        emit_consuming(out, "ignoreEmergencyOver", c, j);
                    }
                    break;
                case MsgKind::reStartRed:
                    if (emergency) {
                        Configuration& n = emit_consuming(out, "reStartRed", c, j);
                        set_red(state_at<CarLightState>(n, i), p.restart_red_hold(s->red_time));
                        n.send(Message::resume_red(pl(self)));
                    } else if (normal) {
                        emit_consuming(out, "ignoreRestart", c, j);
                    }
                    break;
                case MsgKind::reStartGreen:
                    if (emergency) {
                        Configuration& n = emit_consuming(out, "reStartGreen", c, j);
                        set_green(state_at<CarLightState>(n, i), s->green_time);
                        n.send(s->ped_waiting ? Message::resume_green(pl(self), s->green_time)
                                              : Message::resume_red(pl(self)));
                    } else if (normal) {
                        emit_consuming(out, "ignoreRestart", c, j);
                    }
                    break;
                case MsgKind::continueGreen:
                    if (emergency) emit_consuming(out, "ignoreContinueGreen", c, j);
                    break;
                default: break;
            }
        } else if (const auto* s = std::get_if<PedLightState>(&o->state)) {
            if (s->mode.is_error_or_recovery()) continue;
            const bool emergency = s->mode.phase == PedPhase::emergency;
            switch (m.kind) {
                case MsgKind::emergencyDev:
                    if (emergency) {
                        emit_consuming(out, "ignoreEmergency", c, j);
                    } else {
                        Configuration& n = emit_consuming(out, "pedEmergency", c, j);
                        auto& ns = state_at<PedLightState>(n, i);
                        ns.mode = {PedPhase::emergency, 0};
                        ns.color = Color::red;
                        ns.timer = kInf;
                    }
                    break;
                case MsgKind::resumeRed: {
                    Configuration& n = emit_consuming(out, "pedResumeRed", c, j);
                    auto& ns = state_at<PedLightState>(n, i);
                    ns.mode = {PedPhase::normal, 0};
                    ns.color = Color::red;
                    ns.timer = kInf;
                    break;
                }
                case MsgKind::resumeGreen: {
                    Configuration& n = emit_consuming(out, "pedResumeGreen", c, j);
                    auto& ns = state_at<PedLightState>(n, i);
                    ns.mode = {PedPhase::normal, 0};
                    ns.color = Color::green;
                    ns.timer = monus(m.duration, p.walk_time);
                    ns.button_lit = false;
                    break;
                }
                case MsgKind::pedGo:
                    if (emergency) emit_consuming(out, "ignorePedGo", c, j);
                    break;
                default: break;
            }
        }
    }
}

void failure_rules(const Configuration& c, const Params& p, Successors& out) {
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
        const Object& o = c.objects[i];
        if (const auto* s = std::get_if<CarLightState>(&o.state)) {
            if (s->state.phase != CarPhase::errorRecovery || !s->timer.is_zero()) continue;
            Configuration& n = emit(out, "recoveryDone", c);
            auto& ns = state_at<CarLightState>(n, i);
            if (s->default_starter) {
                set_green(ns, s->green_time);
            } else {
                set_red(ns, p.restart_red_hold(s->red_time));
                ns.ped_waiting = false;
            }
        } else if (const auto* s = std::get_if<PedLightState>(&o.state)) {
            if (s->mode.phase != PedPhase::errorRecovery || !s->timer.is_zero()) continue;
            Configuration& n = emit(out, "pedRecoveryDone", c);
            auto& ns = state_at<PedLightState>(n, i);
            ns.mode = {PedPhase::normal, 0};
            ns.color = Color::red;
            ns.timer = kInf;
            ns.button_lit = false;
        }
    }

    for (std::size_t j = 0; j < c.messages.size(); ++j) {
        const Message& m = c.messages[j];
        const Object* o = receiver(c, m);
        if (!o) continue;
        const std::size_t i = index_of(c, o);
        const Oid& self = o->id;
        const bool own = m.has_subject() && m.subject == self;

        if (const auto* s = std::get_if<CarLightState>(&o->state)) {
            if (m.kind == MsgKind::error) {
                if (!s->state.is_error()) {
                    Configuration& n = emit_consuming(out, "somethingBroken1", c, j);
                    auto& ns = state_at<CarLightState>(n, i);
                    ns.lights = s->default_starter ? Color::blinkingYellow : Color::blinkingRed;
                    ns.state = {CarPhase::error, 1};
                    ns.timer = kInf;
                    if (own) notify_siblings(n, self, MsgKind::error);
                } else {
                    Configuration& n = emit_consuming(out, "somethingBrokenMore", c, j);
                    ++state_at<CarLightState>(n, i).state.errors;
                    if (own) notify_siblings(n, self, MsgKind::error);
                }
            } else if (m.kind == MsgKind::repaired) {
                if (s->state.is_error() && s->state.errors >= 2) {
                    Configuration& n = emit_consuming(out, "repairDecrement", c, j);
                    --state_at<CarLightState>(n, i).state.errors;
                    if (own) notify_siblings(n, self, MsgKind::repaired);
                } else if (s->state.is_error()) {
                    Configuration& n = emit_consuming(out, "lastDeviceFixed", c, j);
                    auto& ns = state_at<CarLightState>(n, i);
                    ns.state = {CarPhase::errorRecovery, 0};
                    ns.timer = p.delta;
                    ns.lights = s->default_starter ? Color::green : Color::red;
                    if (own) notify_siblings(n, self, MsgKind::repaired);
                } else {
                    emit_consuming(out, "ignoreRepaired", c, j);
                }
            } else if (in_error_mode(*s)) {
                switch (m.kind) {
                    case MsgKind::pedsWaiting:
                    case MsgKind::continueGreen:
                    case MsgKind::emergencyDev:
                    case MsgKind::emergencyOverDev:
                    case MsgKind::reStartRed:
                    case MsgKind::reStartGreen: emit_consuming(out, "ignoreInErrorMode", c, j); break;
                    default: break;
                }
            }
        } else if (const auto* s = std::get_if<PedLightState>(&o->state)) {
            const bool failed = s->mode.phase == PedPhase::error;
            if (m.kind == MsgKind::error) {
                Configuration& n = emit_consuming(out, failed ? "pedBrokenMore" : "pedBroken1", c, j);
                auto& ns = state_at<PedLightState>(n, i);
                if (failed) {
                    ++ns.mode.errors;
                } else {
                    ns.mode = {PedPhase::error, 1};
                    ns.color = Color::off;
                    ns.timer = kInf;
                }
                if (own) notify_siblings(n, self, MsgKind::error);
            } else if (m.kind == MsgKind::repaired) {
                if (failed && s->mode.errors >= 2) {
                    Configuration& n = emit_consuming(out, "pedRepairDecrement", c, j);
                    --state_at<PedLightState>(n, i).mode.errors;
                    if (own) notify_siblings(n, self, MsgKind::repaired);
                } else if (failed) {
                    Configuration& n = emit_consuming(out, "pedLastFixed", c, j);
                    auto& ns = state_at<PedLightState>(n, i);
                    ns.mode = {PedPhase::errorRecovery, 0};
                    ns.timer = p.delta;
                    if (own) notify_siblings(n, self, MsgKind::repaired);
                } else {
                    emit_consuming(out, "ignoreRepaired", c, j);
                }
            } else if (s->mode.is_error_or_recovery()) {
                switch (m.kind) {
                    case MsgKind::pedGo:
                    case MsgKind::newPed:
                    case MsgKind::emergencyDev:
                    case MsgKind::resumeRed:
                    case MsgKind::resumeGreen: emit_consuming(out, "ignoreInErrorMode", c, j); break;
                    default: break;
                }
            }
        }
    }
}

}  // namespace crosslight
