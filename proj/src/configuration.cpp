#include "crosslight/configuration.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace crosslight {

// ---------------------------------------------------------------------------
// Identifiers and messages

std::string_view to_string(Direction d) { return d == Direction::NS ? "NS" : "EW"; }

std::string_view to_string(OidKind k) {
    switch (k) {
        case OidKind::approach: return "approach";
        case OidKind::carLight: return "carLight";
        case OidKind::crossing: return "crossing";
        case OidKind::envCarsPeds: return "envCarsPeds";
        case OidKind::envEmergency: return "envEmergency";
        case OidKind::envFailure: return "envFailure";
        case OidKind::pedLight: return "pedLight";
        case OidKind::pedStop: return "pedStop";
    }
    return "?";
}

std::strong_ordering operator<=>(const Oid& a, const Oid& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.xing <=> b.xing; c != 0) return c;
    if (a.has_direction()) {
        if (auto c = a.dir <=> b.dir; c != 0) return c;
    }
    if (a.kind == OidKind::envFailure) return a.target <=> b.target;
    return std::strong_ordering::equal;
}

std::string Oid::to_string() const {
    std::string out(crosslight::to_string(kind));
    out += '(';
    if (kind == OidKind::envFailure) {
        out += monitored_device().to_string();
    } else {
        out += '"';
        out += xing;
        out += '"';
        if (has_direction()) {
            out += ',';
            out += crosslight::to_string(dir);
        }
    }
    out += ')';
    return out;
}

Oid pl(const Oid& car) { return Oid::ped_light(car.xing, car.dir); }
Oid cl(const Oid& ped) { return Oid::car_light(ped.xing, ped.dir); }
Oid opposite(const Oid& device) {
    Oid o = device;
    o.dir = opposite(device.dir);
    return o;
}

std::string_view to_string(MsgKind k) {
    switch (k) {
        case MsgKind::continueGreen: return "continueGreen";
        case MsgKind::pedGo: return "pedGo";
        case MsgKind::pedsWaiting: return "pedsWaiting";
        case MsgKind::newPed: return "newPed";
        case MsgKind::newCars: return "newCars";
        case MsgKind::emergencyXing: return "emergencyXing";
        case MsgKind::emergencyOverXing: return "emergencyOverXing";
        case MsgKind::emergencyDev: return "emergency";
        case MsgKind::emergencyOverDev: return "emergencyOver";
        case MsgKind::resumeRed: return "resumeRed";
        case MsgKind::resumeGreen: return "resumeGreen";
        case MsgKind::reStartRed: return "reStartRed";
        case MsgKind::reStartGreen: return "reStartGreen";
        case MsgKind::error: return "error";
        case MsgKind::repaired: return "repaired";
    }
    return "?";
}

std::strong_ordering operator<=>(const Message& a, const Message& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.to <=> b.to; c != 0) return c;
    if (a.has_subject()) {
        if (auto c = a.subject <=> b.subject; c != 0) return c;
    }
    if (a.has_duration()) return a.duration <=> b.duration;
    return std::strong_ordering::equal;
}

std::string Message::to_string() const {
    std::string out(crosslight::to_string(kind));
    out += '(';
    out += to.to_string();
    if (has_subject()) {
        out += ',';
        out += subject.to_string();
    }
    if (has_duration()) {
        out += ',';
        out += duration.to_string();
    }
    out += ')';
    return out;
}

// ---------------------------------------------------------------------------
// Object states

std::string_view to_string(Color c) {
    switch (c) {
        case Color::red: return "red";
        case Color::yellow: return "yellow";
        case Color::green: return "green";
        case Color::blinking: return "blinking";
        case Color::off: return "off";
        case Color::blinkingYellow: return "blinkingYellow";
        case Color::blinkingRed: return "blinkingRed";
    }
    return "?";
}

std::string ColorSet::to_string() const {
    std::string out;
    for (int i = 0; i < 7; ++i) {
        auto c = static_cast<Color>(i);
        if (!contains(c)) continue;
        if (!out.empty()) out += '+';
        out += crosslight::to_string(c);
    }
    return out.empty() ? std::string("none") : out;
}

std::string_view to_string(Regime r) { return r == Regime::american ? "american" : "european"; }

std::string_view to_string(Mutation m) {
    switch (m) {
        case Mutation::none: return "none";
        case Mutation::no_safety_margin: return "no_safety_margin";
        case Mutation::red_to_green_direct: return "red_to_green_direct";
    }
    return "?";
}

void Params::validate() const {
    for (TimeValue t : {delta, safety_margin, yellow_time, walk_time}) {
        if (t.is_zero() || t.is_infinite()) throw std::invalid_argument("controller durations must be finite and nonzero");
    }
}

std::string_view to_string(CarPhase p) {
    switch (p) {
        case CarPhase::red: return "red";
        case CarPhase::toRedYellow: return "toRedYellow";
        case CarPhase::toGreen: return "toGreen";
        case CarPhase::green: return "green";
        case CarPhase::yellow: return "yellow";
        case CarPhase::emergency: return "emergency";
        case CarPhase::error: return "error";
        case CarPhase::errorRecovery: return "errorRecovery";
    }
    return "?";
}

std::string CLState::to_string() const {
    if (phase == CarPhase::error) return "error(" + std::to_string(errors) + ")";
    return std::string(crosslight::to_string(phase));
}

std::string_view to_string(PedPhase p) {
    switch (p) {
        case PedPhase::normal: return "normal";
        case PedPhase::emergency: return "emergency";
        case PedPhase::error: return "error";
        case PedPhase::errorRecovery: return "errorRecovery";
    }
    return "?";
}

std::string PLMode::to_string() const {
    if (phase == PedPhase::error) return "error(" + std::to_string(errors) + ")";
    return std::string(crosslight::to_string(phase));
}

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

struct AttributeLister {
    using List = std::vector<std::pair<std::string_view, std::string>>;
    List operator()(const CarLightState& s) const {
        return {{"lights", s.lights.to_string()},       {"timer", s.timer.to_string()},
                {"state", s.state.to_string()},         {"redTime", s.red_time.to_string()},
                {"greenTime", s.green_time.to_string()}, {"pedWaiting", bool_str(s.ped_waiting)},
                {"defaultStarter", bool_str(s.default_starter)}};
    }
    List operator()(const PedLightState& s) const {
        return {{"timer", s.timer.to_string()},
                {"color", std::string(to_string(s.color))},
                {"buttonLit", bool_str(s.button_lit)},
                {"mode", s.mode.to_string()}};
    }
    List operator()(const ApproachState& s) const { return {{"carsPresent", bool_str(s.cars_present)}}; }
    List operator()(const PeriodicEnvState& s) const {
        std::string events;
        if (s.possible_events) {
            for (const Message& m : *s.possible_events) {
                if (!events.empty()) events += ' ';
                events += m.to_string();
            }
        }
        return {{"frequency", s.frequency.to_string()},
                {"timeToNextEvents", s.time_to_next.to_string()},
                {"possibleEvents", events}};
    }
    List operator()(const EmergencyEnvState& s) const {
        return {{"frequency", s.frequency.to_string()},
                {"timeToNextEvents", s.time_to_next.to_string()},
                {"emergencyOn", bool_str(s.emergency_on)}};
    }
    List operator()(const FailureEnvState& s) const {
        return {{"frequency", s.frequency.to_string()},
                {"minSeparation", s.min_separation.to_string()},
                {"phase", s.down ? "down" : "up"},
                {"timer", s.timer.to_string()}};
    }
};

}  // namespace

std::vector<std::pair<std::string_view, std::string>> attributes(const ObjectState& s) {
    return std::visit(AttributeLister{}, s);
}

// ---------------------------------------------------------------------------
// Configuration

const Object* Configuration::find(const Oid& id) const {
    for (const Object& o : objects) {
        if (o.id == id) return &o;
    }
    return nullptr;
}

Object* Configuration::find(const Oid& id) {
    for (Object& o : objects) {
        if (o.id == id) return &o;
    }
    return nullptr;
}

void Configuration::add(Object o) {
    if (find(o.id)) throw Error("duplicate object " + o.id.to_string());
    objects.push_back(std::move(o));
}

bool is_normalized(const Configuration& c) {
    return std::none_of(c.messages.begin(), c.messages.end(), [](const Message& m) {
        return m.kind == MsgKind::emergencyXing || m.kind == MsgKind::emergencyOverXing;
    });
}

Configuration normalize(Configuration c) {
    if (is_normalized(c)) return c;
    std::vector<Message> out;
    out.reserve(c.messages.size() + 2);
    for (Message& m : c.messages) {
        if (m.kind == MsgKind::emergencyXing || m.kind == MsgKind::emergencyOverXing) {
            const MsgKind dev = m.kind == MsgKind::emergencyXing ? MsgKind::emergencyDev : MsgKind::emergencyOverDev;
            out.push_back({dev, Oid::car_light(m.to.xing, Direction::EW), {}, {}});
            out.push_back({dev, Oid::car_light(m.to.xing, Direction::NS), {}, {}});
        } else {
            out.push_back(std::move(m));
        }
    }
    c.messages = std::move(out);
    return c;
}

Configuration canonical_form(Configuration c) {
    std::sort(c.objects.begin(), c.objects.end(), [](const Object& a, const Object& b) { return a.id < b.id; });
    std::sort(c.messages.begin(), c.messages.end());
    // Possible events form a set: the generator offers every subset.
    for (Object& o : c.objects) {
        auto* env = std::get_if<PeriodicEnvState>(&o.state);
        if (!env || !env->possible_events || std::is_sorted(env->possible_events->begin(), env->possible_events->end()))
            continue;
        auto events = *env->possible_events;
        std::sort(events.begin(), events.end());
        env->possible_events = std::make_shared<const std::vector<Message>>(std::move(events));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Canonical key
//
// Layout: crossing-name table (sorted), objects sorted by Oid, messages
// sorted by their own encodings. Integers are LEB128; time values are stored
// as raw+1 with 0 meaning infinity.

namespace {

enum class StateTag : std::uint8_t { car, ped, approach, periodic, emergency, failure };

class Writer {
public:
    explicit Writer(const std::vector<std::string_view>& xings) : xings_(xings) {}

    void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
    void varint(std::uint64_t v) {
        while (v >= 0x80) {
            u8(static_cast<std::uint8_t>(v | 0x80));
            v >>= 7;
        }
        u8(static_cast<std::uint8_t>(v));
    }
    void time(TimeValue t) { varint(t.is_infinite() ? 0 : t.raw() + 1); }
    void boolean(bool b) { u8(b ? 1 : 0); }
    void bytes(std::string_view s) {
        varint(s.size());
        out_.append(s);
    }
    void oid(const Oid& id) {
        u8(static_cast<std::uint8_t>(id.kind));
        auto it = std::lower_bound(xings_.begin(), xings_.end(), std::string_view(id.xing));
        varint(static_cast<std::uint64_t>(it - xings_.begin()));
        u8(static_cast<std::uint8_t>(id.has_direction() ? id.dir : Direction::NS));
        if (id.kind == OidKind::envFailure) u8(static_cast<std::uint8_t>(id.target));
    }
    void message(const Message& m) {
        u8(static_cast<std::uint8_t>(m.kind));
        oid(m.to);
        if (m.has_subject()) oid(m.subject);
        if (m.has_duration()) time(m.duration);
    }
    std::string take() { return std::move(out_); }
    std::string& buffer() { return out_; }

private:
    const std::vector<std::string_view>& xings_;
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::string_view in) : in_(in) {}

    std::uint8_t u8() {
        if (pos_ >= in_.size()) throw Error("truncated configuration key");
        return static_cast<std::uint8_t>(in_[pos_++]);
    }
    std::uint64_t varint() {
        std::uint64_t v = 0;
        for (int shift = 0; shift < 64; shift += 7) {
            std::uint8_t b = u8();
            v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
            if ((b & 0x80) == 0) return v;
        }
        throw Error("malformed integer in configuration key");
    }
    TimeValue time() {
        std::uint64_t v = varint();
        return v == 0 ? kInf : TimeValue(v - 1);
    }
    bool boolean() { return u8() != 0; }
    std::string_view bytes() {
        std::uint64_t n = varint();
        if (n > in_.size() - pos_) throw Error("truncated configuration key");
        std::string_view s = in_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    template <class E>
    E enumeration(std::uint8_t limit) {
        std::uint8_t v = u8();
        if (v > limit) throw Error("invalid enumerator in configuration key");
        return static_cast<E>(v);
    }
    Oid oid() {
        Oid id;
        id.kind = enumeration<OidKind>(static_cast<std::uint8_t>(OidKind::pedStop));
        std::uint64_t xi = varint();
        if (xi >= xings.size()) throw Error("invalid crossing index in configuration key");
        id.xing = xings[xi];
        id.dir = enumeration<Direction>(1);
        if (id.kind == OidKind::envFailure) id.target = enumeration<OidKind>(static_cast<std::uint8_t>(OidKind::pedStop));
        return id;
    }
    Message message() {
        Message m;
        m.kind = enumeration<MsgKind>(kMsgKindCount - 1);
        m.to = oid();
        if (m.has_subject()) m.subject = oid();
        if (m.has_duration()) m.duration = time();
        return m;
    }
    bool done() const { return pos_ == in_.size(); }

    std::vector<std::string> xings;

private:
    std::string_view in_;
    std::size_t pos_ = 0;
};

void collect_xings(const Oid& id, std::vector<std::string_view>& out) { out.push_back(id.xing); }

void collect_xings(const Message& m, std::vector<std::string_view>& out) {
    out.push_back(m.to.xing);
    if (m.has_subject()) out.push_back(m.subject.xing);
}

void encode_messages(Writer& w, std::vector<std::string>& scratch, const std::vector<Message>& ms,
                            const std::vector<std::string_view>& xings) {
    scratch.clear();
    for (const Message& m : ms) {
        Writer one(xings);
        one.message(m);
        scratch.push_back(one.take());
    }
    std::sort(scratch.begin(), scratch.end());
    w.varint(scratch.size());
    for (const std::string& s : scratch) w.buffer().append(s);
}

}  // namespace

std::string canonical_key(const Configuration& c) {
    std::vector<std::string_view> xings;
    xings.reserve(c.objects.size() + c.messages.size() * 2);
    for (const Object& o : c.objects) {
        collect_xings(o.id, xings);
        if (const auto* p = std::get_if<PeriodicEnvState>(&o.state); p && p->possible_events) {
            for (const Message& m : *p->possible_events) collect_xings(m, xings);
        }
    }
    for (const Message& m : c.messages) collect_xings(m, xings);
    std::sort(xings.begin(), xings.end());
    xings.erase(std::unique(xings.begin(), xings.end()), xings.end());

    Writer w(xings);
    w.varint(xings.size());
    for (std::string_view x : xings) w.bytes(x);

    std::vector<const Object*> objs;
    objs.reserve(c.objects.size());
    for (const Object& o : c.objects) objs.push_back(&o);
    std::sort(objs.begin(), objs.end(), [](const Object* a, const Object* b) { return a->id < b->id; });

    std::vector<std::string> scratch;
    w.varint(objs.size());
    for (const Object* o : objs) {
        w.oid(o->id);
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, CarLightState>) {
                    w.u8(static_cast<std::uint8_t>(StateTag::car));
                    w.u8(s.lights.bits());
                    w.time(s.timer);
                    w.u8(static_cast<std::uint8_t>(s.state.phase));
                    w.u8(s.state.errors);
                    w.time(s.red_time);
                    w.time(s.green_time);
                    w.u8(static_cast<std::uint8_t>((s.ped_waiting ? 1 : 0) | (s.default_starter ? 2 : 0)));
                } else if constexpr (std::is_same_v<S, PedLightState>) {
                    w.u8(static_cast<std::uint8_t>(StateTag::ped));
                    w.time(s.timer);
                    w.u8(static_cast<std::uint8_t>(s.color));
                    w.boolean(s.button_lit);
                    w.u8(static_cast<std::uint8_t>(s.mode.phase));
                    w.u8(s.mode.errors);
                } else if constexpr (std::is_same_v<S, ApproachState>) {
                    w.u8(static_cast<std::uint8_t>(StateTag::approach));
                    w.boolean(s.cars_present);
                } else if constexpr (std::is_same_v<S, PeriodicEnvState>) {
                    w.u8(static_cast<std::uint8_t>(StateTag::periodic));
                    w.time(s.frequency);
                    w.time(s.time_to_next);
                    static const std::vector<Message> kNone;
                    encode_messages(w, scratch, s.possible_events ? *s.possible_events : kNone, xings);
                } else if constexpr (std::is_same_v<S, EmergencyEnvState>) {
                    w.u8(static_cast<std::uint8_t>(StateTag::emergency));
                    w.time(s.frequency);
                    w.time(s.time_to_next);
                    w.boolean(s.emergency_on);
                } else {
                    w.u8(static_cast<std::uint8_t>(StateTag::failure));
                    w.time(s.frequency);
                    w.time(s.min_separation);
                    w.boolean(s.down);
                    w.time(s.timer);
                }
            },
            o->state);
    }
    encode_messages(w, scratch, c.messages, xings);
    return w.take();
}

Configuration decode_key(std::string_view key) {
    Reader r(key);
    const std::uint64_t nx = r.varint();
    if (nx > key.size()) throw Error("malformed configuration key");
    for (std::uint64_t i = 0; i < nx; ++i) r.xings.emplace_back(r.bytes());

    Configuration c;
    const std::uint64_t no = r.varint();
    if (no > key.size()) throw Error("malformed configuration key");
    for (std::uint64_t i = 0; i < no; ++i) {
        Object o;
        o.id = r.oid();
        switch (r.enumeration<StateTag>(static_cast<std::uint8_t>(StateTag::failure))) {
            case StateTag::car: {
                CarLightState s;
                s.lights = ColorSet::from_bits(r.u8());
                s.timer = r.time();
                s.state.phase = r.enumeration<CarPhase>(static_cast<std::uint8_t>(CarPhase::errorRecovery));
                s.state.errors = r.u8();
                s.red_time = r.time();
                s.green_time = r.time();
                std::uint8_t flags = r.u8();
                s.ped_waiting = flags & 1;
                s.default_starter = flags & 2;
                o.state = s;
                break;
            }
            case StateTag::ped: {
                PedLightState s;
                s.timer = r.time();
                s.color = r.enumeration<Color>(static_cast<std::uint8_t>(Color::blinkingRed));
                s.button_lit = r.boolean();
                s.mode.phase = r.enumeration<PedPhase>(static_cast<std::uint8_t>(PedPhase::errorRecovery));
                s.mode.errors = r.u8();
                o.state = s;
                break;
            }
            case StateTag::approach: o.state = ApproachState{r.boolean()}; break;
            case StateTag::periodic: {
                PeriodicEnvState s;
                s.frequency = r.time();
                s.time_to_next = r.time();
                auto events = std::make_shared<std::vector<Message>>();
                const std::uint64_t n = r.varint();
                if (n > key.size()) throw Error("malformed configuration key");
                for (std::uint64_t k = 0; k < n; ++k) events->push_back(r.message());
                s.possible_events = std::move(events);
                o.state = std::move(s);
                break;
            }
            case StateTag::emergency: {
                EmergencyEnvState s;
                s.frequency = r.time();
                s.time_to_next = r.time();
                s.emergency_on = r.boolean();
                o.state = s;
                break;
            }
            case StateTag::failure: {
                FailureEnvState s;
                s.frequency = r.time();
                s.min_separation = r.time();
                s.down = r.boolean();
                s.timer = r.time();
                o.state = s;
                break;
            }
        }
        c.objects.push_back(std::move(o));
    }
    const std::uint64_t nm = r.varint();
    if (nm > key.size()) throw Error("malformed configuration key");
    for (std::uint64_t i = 0; i < nm; ++i) c.messages.push_back(r.message());
    if (!r.done()) throw Error("trailing bytes in configuration key");
    return c;
}

std::string to_string(const Configuration& c) {
    const Configuration sorted = canonical_form(c);
    std::ostringstream os;
    for (const Object& o : sorted.objects) {
        os << "< " << o.id.to_string() << " |";
        bool first = true;
        for (const auto& [name, value] : attributes(o.state)) {
            os << (first ? " " : ", ") << name << " : " << value;
            first = false;
        }
        os << " >\n";
    }
    for (const Message& m : sorted.messages) os << m.to_string() << '\n';
    return os.str();
}

}  // namespace crosslight
