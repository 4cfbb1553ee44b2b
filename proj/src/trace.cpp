#include "crosslight/trace.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "crosslight/kernel.hpp"

namespace crosslight {

namespace {

constexpr std::string_view kMagic = "# crosslight trace v1";
constexpr std::string_view kScenarioPrefix = "#! ";
constexpr std::string_view kCycleMarker = "CYCLE-START";

std::string label(std::string_view rule, TimeValue duration) {
    if (rule == kTickRule) return "tick(" + duration.to_string() + ")";
    return std::string(rule);
}

std::vector<std::string> message_texts(const std::vector<Message>& ms) {
    std::vector<std::string> out;
    for (const Message& m : ms) out.push_back(m.to_string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string render_step(const Configuration& before, const Configuration& after, std::string_view rule,
                        TimeValue duration, TimeValue now) {
    std::string line = "t=" + now.to_string() + " rule=" + label(rule, duration);
    const Configuration a = canonical_form(before);
    const Configuration b = canonical_form(after);
    for (const Object& o : b.objects) {
        const Object* prev = a.find(o.id);
        if (!prev) {
            line += " | +" + o.id.to_string();
            continue;
        }
        if (*prev == o) continue;
        const auto old_attrs = attributes(prev->state);
        const auto new_attrs = attributes(o.state);
        line += " | " + o.id.to_string() + ":";
        for (std::size_t i = 0; i < new_attrs.size() && i < old_attrs.size(); ++i) {
            if (old_attrs[i].second == new_attrs[i].second) continue;
            line += " " + std::string(new_attrs[i].first) + "=" + old_attrs[i].second + "→" + new_attrs[i].second;
        }
    }
    for (const Object& o : a.objects)
        if (!b.find(o.id)) line += " | -" + o.id.to_string();

    const auto ma = message_texts(a.messages);
    const auto mb = message_texts(b.messages);
    std::vector<std::string> gone, sent;
    std::set_difference(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(gone));
    std::set_difference(mb.begin(), mb.end(), ma.begin(), ma.end(), std::back_inserter(sent));
    for (const auto& m : gone) line += " | -" + m;
    for (const auto& m : sent) line += " | +" + m;
    return line;
}

std::string write_trace(const ScenarioSpec& spec, const Trace& trace) {
    std::ostringstream out;
    out << kMagic << '\n';
    std::istringstream scenario(write_scenario(spec));
    for (std::string line; std::getline(scenario, line);) out << kScenarioPrefix << line << '\n';
    out << "t=0 rule=init\n";
    if (trace.cycle_start == 0) out << kCycleMarker << '\n';
    TimeValue now = 0_tu;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& s = trace.steps[i];
        now = now + s.duration;
        out << render_step(trace.state_at(i), s.state, s.rule, s.duration, now) << '\n';
        if (trace.cycle_start == i + 1) out << kCycleMarker << '\n';
    }
    return out.str();
}

ReplayResult replay_trace(std::string_view text) {
    ReplayResult r;
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string scenario;
    {
        std::size_t no = 0;
        while (!text.empty()) {
            ++no;
            const auto nl = text.find('\n');
            std::string line(text.substr(0, nl));
            text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.rfind(kScenarioPrefix, 0) == 0) {
                scenario += line.substr(kScenarioPrefix.size()) + '\n';
            } else if (!line.empty() && line[0] != '#') {
                lines.emplace_back(no, std::move(line));
            }
        }
    }
    auto fail = [&](std::size_t line, const std::string& why) {
        r.ok = false;
        r.message = "line " + std::to_string(line) + ": " + why;
        return r;
    };
    if (lines.empty() || lines.front().second != "t=0 rule=init") return fail(lines.empty() ? 1 : lines.front().first, "trace must start with 't=0 rule=init'");

    ScenarioSpec spec;
    Configuration cur;
    try {
        spec = parse_scenario(scenario);
        cur = build_init(spec);
    } catch (const std::exception& e) {
        return fail(1, std::string("bad scenario header: ") + e.what());
    }

    TimeValue now = 0_tu;
    std::optional<std::string> cycle_key;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [no, line] = lines[i];
        if (line == kCycleMarker) {
            if (cycle_key) return fail(no, "second cycle marker");
            cycle_key = canonical_key(cur);
            continue;
        }
        const auto succs = all_successors(cur, spec.params);
        bool matched = false;
        if (succs.empty()) {
            if (line == render_step(cur, cur, "deadlock", 0_tu, now)) matched = true;
        }
        for (const auto& s : succs) {
            const TimeValue t = now + s.duration;
            if (render_step(cur, s.next, s.rule, s.duration, t) == line) {
                cur = s.next;
                now = t;
                matched = true;
                break;
            }
        }
        if (!matched) return fail(no, "no successor of the current state matches '" + line + "'");
        ++r.steps;
    }
    if (cycle_key && *cycle_key != canonical_key(cur))
        return fail(lines.back().first, "cycle does not return to the state marked CYCLE-START");
    r.ok = true;
    r.message = "replayed " + std::to_string(r.steps) + " steps";
    return r;
}

Trace simulate(const ScenarioSpec& spec, std::size_t steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Trace tr;
    tr.init = build_init(spec);
    Configuration cur = tr.init;
    for (std::size_t i = 0; i < steps; ++i) {
        auto succs = all_successors(cur, spec.params);
        if (succs.empty()) {
            tr.steps.push_back({std::string(kDeadlockRule), 0_tu, cur});
            continue;
        }
        auto& pick = succs[rng() % succs.size()];
        tr.steps.push_back({std::string(pick.rule), pick.duration, pick.next});
        cur = std::move(pick.next);
    }
    return tr;
}

}  // namespace crosslight
