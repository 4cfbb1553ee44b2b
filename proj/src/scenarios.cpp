#include "crosslight/scenarios.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace crosslight {

namespace {

void check_times(const std::string& xing, TimeValue green, TimeValue red, const Params& p) {
    if (xing.empty()) throw std::invalid_argument("intersection name must not be empty");
    if (green.is_infinite() || red.is_infinite()) throw std::invalid_argument("green and red times must be finite");
    if (green < p.min_green_time())
        throw std::invalid_argument("green time " + green.to_string() + " of " + xing + " is below the minimum " +
                                    p.min_green_time().to_string());
    if (red < p.min_red_time())
        throw std::invalid_argument("red time " + red.to_string() + " of " + xing + " is below the minimum " +
                                    p.min_red_time().to_string());
    // The opposite light's green time is red - (yellow + 2 margins); it must stay nonzero.
    if (red < p.yellow_time + p.safety_margin + p.safety_margin + 1_tu)
        throw std::invalid_argument("red time of " + xing + " leaves no green time for the other direction");
}

void add_env_failure(Configuration& c, const Oid& device, const ScenarioSpec& s) {
    c.add({Oid::env_failure(device), FailureEnvState{s.fail_frequency, s.fail_separation, false, 0_tu}});
}

void add_cars_and_peds(Configuration& c, const std::string& xing) {
    auto events = std::make_shared<const std::vector<Message>>(std::vector<Message>{
        Message::new_cars(Oid::approach(xing, Direction::NS)),
        Message::new_cars(Oid::approach(xing, Direction::EW)),
        Message::new_ped(Oid::ped_stop(xing, Direction::NS)),
        Message::new_ped(Oid::ped_stop(xing, Direction::EW)),
    });
    c.add({Oid::env_cars_peds(xing), PeriodicEnvState{1_tu, 0_tu, std::move(events)}});
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

unsigned parse_unsigned(std::string_view s, std::string_view what) {
    s = trim(s);
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error("expected a non-negative integer for " + std::string(what) + ", got '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    for (;;) {
        const auto pos = s.find(sep);
        parts.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) return parts;
        s.remove_prefix(pos + 1);
    }
}

}  // namespace

void ScenarioSpec::validate() const {
    params.validate();
    check_times(xing, green_time, red_time, params);
    for (const auto& x : extra_intersections) check_times(x.xing, x.green_time, x.red_time, params);
    if (car_faults < 0 || car_faults > 2) throw std::invalid_argument("car_faults must be 0, 1 or 2");
    if (ped_faults < 0 || ped_faults > 2) throw std::invalid_argument("ped_faults must be 0, 1 or 2");
    if (emergency_period.is_infinite()) throw std::invalid_argument("emergency period must be finite");
    for (TimeValue t : {fail_frequency, fail_separation})
        if (t.is_zero() || t.is_infinite()) throw std::invalid_argument("failure timing must be finite and nonzero");
    const auto names = intersections();
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw std::invalid_argument("duplicate intersection " + names[i]);
}

std::vector<std::string> ScenarioSpec::intersections() const {
    std::vector<std::string> names{xing};
    for (const auto& x : extra_intersections) names.push_back(x.xing);
    return names;
}

ScenarioSpec make_init(std::string xing, unsigned green, unsigned red, unsigned emergency_period, int car_faults,
                       int ped_faults, unsigned fail_frequency, unsigned fail_separation) {
    ScenarioSpec s;
    s.xing = std::move(xing);
    s.green_time = TimeValue(green);
    s.red_time = TimeValue(red);
    s.emergency_period = TimeValue(emergency_period);
    s.car_faults = car_faults;
    s.ped_faults = ped_faults;
    s.fail_frequency = TimeValue(fail_frequency);
    s.fail_separation = TimeValue(fail_separation);
    s.validate();
    return s;
}

ScenarioSpec parse_init_args(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 8)
        throw Error("init expects 8 comma-separated values (xing,green,red,emergency,carFaults,pedFaults,"
                    "failFrequency,failSeparation), got " +
                    std::to_string(parts.size()));
    try {
        return make_init(std::string(parts[0]), parse_unsigned(parts[1], "green time"),
                         parse_unsigned(parts[2], "red time"), parse_unsigned(parts[3], "emergency period"),
                         static_cast<int>(parse_unsigned(parts[4], "car faults")),
                         static_cast<int>(parse_unsigned(parts[5], "ped faults")),
                         parse_unsigned(parts[6], "failure frequency"), parse_unsigned(parts[7], "failure separation"));
    } catch (const std::invalid_argument& e) {
        throw Error(e.what());
    }
}

Configuration build_lights(const std::string& xing, Direction prioritized, TimeValue green_time, TimeValue red_time,
                           const Params& p) {
    check_times(xing, green_time, red_time, p);
    const Direction other = opposite(prioritized);
    Configuration c;

    CarLightState starter;
    starter.lights = Color::green;
    starter.timer = green_time;
    starter.state = {CarPhase::green, 0};
    starter.red_time = red_time;
    starter.green_time = green_time;
    starter.default_starter = true;
    c.add({Oid::car_light(xing, prioritized), starter});

    CarLightState follower;
    follower.lights = Color::red;
    follower.timer = monus(green_time, p.delta);
    follower.state = {CarPhase::red, 0};
    follower.red_time = green_time + p.yellow_time + p.safety_margin + p.safety_margin;
    follower.green_time = monus(red_time, p.yellow_time + p.safety_margin + p.safety_margin);
    c.add({Oid::car_light(xing, other), follower});

    c.add({Oid::ped_light(xing, prioritized), PedLightState{}});
    c.add({Oid::ped_light(xing, other), PedLightState{}});
    c.add({Oid::approach(xing, Direction::NS), ApproachState{}});
    c.add({Oid::approach(xing, Direction::EW), ApproachState{}});
    return c;
}

Configuration build_env(const ScenarioSpec& s) {
    Configuration c;
    add_cars_and_peds(c, s.xing);
    for (const auto& x : s.extra_intersections) add_cars_and_peds(c, x.xing);
    if (!s.emergency_period.is_zero())
        c.add({Oid::env_emergency(s.xing), EmergencyEnvState{s.emergency_period, 0_tu, false}});
    if (s.car_faults == 2) {
        add_env_failure(c, Oid::car_light(s.xing, Direction::NS), s);
        add_env_failure(c, Oid::car_light(s.xing, Direction::EW), s);
    } else if (s.car_faults == 1) {
        add_env_failure(c, Oid::car_light(s.xing, Direction::NS), s);
    }
    if (s.ped_faults == 2) {
        add_env_failure(c, Oid::ped_light(s.xing, Direction::NS), s);
        add_env_failure(c, Oid::ped_light(s.xing, Direction::EW), s);
    } else if (s.ped_faults == 1) {
        add_env_failure(c, Oid::ped_light(s.xing, Direction::EW), s);
    }
    return c;
}

Configuration build_init(const ScenarioSpec& s) {
    s.validate();
    Configuration c = build_lights(s.xing, Direction::NS, s.green_time, s.red_time, s.params);
    for (const auto& x : s.extra_intersections) {
        Configuration more = build_lights(x.xing, Direction::NS, x.green_time, x.red_time, s.params);
        for (Object& o : more.objects) c.add(std::move(o));
    }
    for (Object& o : build_env(s).objects) c.add(std::move(o));
    return normalize(std::move(c));
}

ScenarioSpec parse_scenario(std::string_view text) {
    ScenarioSpec s;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto where = "line " + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw Error(where + "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        try {
            auto time = [&] { return TimeValue(parse_unsigned(value, key)); };
            if (key == "xing") {
                if (value.empty()) throw Error("empty intersection name");
                s.xing = std::string(value);
            } else if (key == "green_time") {
                s.green_time = time();
            } else if (key == "red_time") {
                s.red_time = time();
            } else if (key == "emergency_period") {
                s.emergency_period = time();
            } else if (key == "car_faults") {
                s.car_faults = static_cast<int>(parse_unsigned(value, key));
            } else if (key == "ped_faults") {
                s.ped_faults = static_cast<int>(parse_unsigned(value, key));
            } else if (key == "fail_frequency") {
                s.fail_frequency = time();
            } else if (key == "fail_separation") {
                s.fail_separation = time();
            } else if (key == "regime") {
                if (value == "american") s.params.regime = Regime::american;
                else if (value == "european") s.params.regime = Regime::european;
                else throw Error("regime must be american or european");
            } else if (key == "delta") {
                s.params.delta = time();
            } else if (key == "safety_margin") {
                s.params.safety_margin = time();
            } else if (key == "yellow_time") {
                s.params.yellow_time = time();
            } else if (key == "walk_time") {
                s.params.walk_time = time();
            } else if (key == "mutation") {
                if (value == "none") s.params.mutation = Mutation::none;
                else if (value == "no_safety_margin") s.params.mutation = Mutation::no_safety_margin;
                else if (value == "red_to_green_direct") s.params.mutation = Mutation::red_to_green_direct;
                else throw Error("unknown mutation '" + std::string(value) + "'");
            } else if (key == "intersection") {
                const auto parts = split(value, ',');
                if (parts.size() != 3 || parts[0].empty()) throw Error("expected 'intersection = name,green,red'");
                s.extra_intersections.push_back({std::string(parts[0]), TimeValue(parse_unsigned(parts[1], "green")),
                                                 TimeValue(parse_unsigned(parts[2], "red"))});
            } else {
                throw Error("unknown key '" + key + "'");
            }
        } catch (const Error& e) {
            throw Error(where + e.what());
        }
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw Error(std::string("invalid scenario: ") + e.what());
    }
    return s;
}

ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

std::string write_scenario(const ScenarioSpec& s) {
    std::ostringstream o;
    o << "xing = " << s.xing << '\n'
      << "green_time = " << s.green_time.to_string() << '\n'
      << "red_time = " << s.red_time.to_string() << '\n'
      << "emergency_period = " << s.emergency_period.to_string() << '\n'
      << "car_faults = " << s.car_faults << '\n'
      << "ped_faults = " << s.ped_faults << '\n'
      << "fail_frequency = " << s.fail_frequency.to_string() << '\n'
      << "fail_separation = " << s.fail_separation.to_string() << '\n'
      << "regime = " << to_string(s.params.regime) << '\n';
    const Params defaults;
    if (s.params.delta != defaults.delta) o << "delta = " << s.params.delta.to_string() << '\n';
    if (s.params.safety_margin != defaults.safety_margin)
        o << "safety_margin = " << s.params.safety_margin.to_string() << '\n';
    if (s.params.yellow_time != defaults.yellow_time) o << "yellow_time = " << s.params.yellow_time.to_string() << '\n';
    if (s.params.walk_time != defaults.walk_time) o << "walk_time = " << s.params.walk_time.to_string() << '\n';
    if (s.params.mutation != Mutation::none) o << "mutation = " << to_string(s.params.mutation) << '\n';
    for (const auto& x : s.extra_intersections)
        o << "intersection = " << x.xing << ',' << x.green_time.to_string() << ',' << x.red_time.to_string() << '\n';
    return o.str();
}

std::string describe(const ScenarioSpec& s) {
    std::ostringstream o;
    o << "init(\"" << s.xing << "\", " << s.green_time.to_string() << ", " << s.red_time.to_string() << ", "
      << s.emergency_period.to_string() << ", " << s.car_faults << ", " << s.ped_faults << ", "
      << s.fail_frequency.to_string() << ", " << s.fail_separation.to_string() << ")";
    if (s.params.regime != Regime::american) o << " regime=" << to_string(s.params.regime);
    if (s.params.mutation != Mutation::none) o << " mutation=" << to_string(s.params.mutation);
    for (const auto& x : s.extra_intersections)
        o << " + " << x.xing << "(" << x.green_time.to_string() << ", " << x.red_time.to_string() << ")";
    return o.str();
}

}  // namespace crosslight
