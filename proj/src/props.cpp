#include "crosslight/props.hpp"

#include <array>

namespace crosslight {

namespace {

constexpr std::array<std::string_view, 11> kPropNames = {
    "pedLightRed", "pedArriving", "buttonPushed", "carLightRed", "carLightGreen", "carWaiting",
    "carArriving", "walking",     "driving",      "failure",     "repair",
};

Direction parse_direction(std::string_view s) {
    if (s == "NS") return Direction::NS;
    if (s == "EW") return Direction::EW;
    throw Error("expected direction NS or EW, got '" + std::string(s) + "'");
}

bool has_self_addressed(const Configuration& c, MsgKind kind, const std::string& xing) {
    for (const Message& m : c.messages)
        if (m.kind == kind && m.to.xing == xing && m.subject == m.to) return true;
    return false;
}

}  // namespace

std::string_view to_string(PropKind k) { return kPropNames[static_cast<std::size_t>(k)]; }

std::string AtomicProp::to_string() const {
    std::string s(crosslight::to_string(kind));
    if (!has_direction()) return xing.empty() ? s : s + "(\"" + xing + "\")";
    s += '(';
    if (!xing.empty()) s += "\"" + xing + "\", ";
    s += crosslight::to_string(dir);
    return s + ')';
}

AtomicProp make_prop(std::string_view name, const std::vector<std::string>& args) {
    AtomicProp a;
    std::size_t k = 0;
    while (k < kPropNames.size() && kPropNames[k] != name) ++k;
    if (k == kPropNames.size()) throw Error("unknown proposition '" + std::string(name) + "'");
    a.kind = static_cast<PropKind>(k);

    auto take_xing = [&](const std::string& s) {
        if (s.size() < 3 || s.front() != '"' || s.back() != '"')
            throw Error("intersection name must be a nonempty quoted string, got " + s);
        a.xing = s.substr(1, s.size() - 2);
    };
    if (!a.has_direction()) {
        if (args.size() > 1) throw Error(std::string(name) + " takes at most an intersection name");
        if (args.size() == 1) take_xing(args[0]);
        return a;
    }
    if (args.size() == 1) {
        a.dir = parse_direction(args[0]);
    } else if (args.size() == 2) {
        take_xing(args[0]);
        a.dir = parse_direction(args[1]);
    } else {
        throw Error(std::string(name) + " expects (DIR) or (\"xing\", DIR)");
    }
    return a;
}

AtomicProp bind(AtomicProp a, const std::string& default_xing) {
    if (a.xing.empty()) a.xing = default_xing;
    return a;
}

void check_resolvable(const Configuration& c, const AtomicProp& a) {
    if (!c.find(Oid::car_light(a.xing, Direction::NS)))
        throw Error("proposition " + a.to_string() + " names unknown intersection '" + a.xing + "'");
}

bool eval_prop(const Configuration& c, const AtomicProp& a) {
    switch (a.kind) {
        case PropKind::pedLightRed:
        case PropKind::buttonPushed:
        case PropKind::walking: {
            const auto* s = c.state_of<PedLightState>(Oid::ped_light(a.xing, a.dir));
            if (!s) throw Error("no pedestrian light for " + a.to_string());
            if (a.kind == PropKind::pedLightRed) return s->color == Color::red;
            if (a.kind == PropKind::buttonPushed) return s->button_lit;
            return s->color == Color::green || s->color == Color::blinking;
        }
        case PropKind::carLightRed:
        case PropKind::carLightGreen:
        case PropKind::driving: {
            const auto* s = c.state_of<CarLightState>(Oid::car_light(a.xing, a.dir));
            if (!s) throw Error("no car light for " + a.to_string());
            return s->lights.contains(a.kind == PropKind::carLightRed ? Color::red : Color::green);
        }
        case PropKind::carWaiting: {
            const auto* s = c.state_of<ApproachState>(Oid::approach(a.xing, a.dir));
            if (!s) throw Error("no approach for " + a.to_string());
            return s->cars_present;
        }
        case PropKind::pedArriving: {
            const Oid stop = Oid::ped_stop(a.xing, a.dir);
            for (const Message& m : c.messages)
                if (m.kind == MsgKind::newPed && m.to == stop) return true;
            return false;
        }
        case PropKind::carArriving: {
            const Oid approach = Oid::approach(a.xing, a.dir);
            for (const Message& m : c.messages)
                if (m.kind == MsgKind::newCars && m.to == approach) return true;
            return false;
        }
        case PropKind::failure: check_resolvable(c, a); return has_self_addressed(c, MsgKind::error, a.xing);
        case PropKind::repair: check_resolvable(c, a); return has_self_addressed(c, MsgKind::repaired, a.xing);
    }
    return false;
}

}  // namespace crosslight
