#include "properties.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "crosslight/kernel.hpp"
#include "oracle.hpp"

namespace props {

using namespace crosslight;

namespace {

std::vector<const TimeValue*> timers(const Configuration& c) {
    std::vector<const TimeValue*> out;
    for (const Object& o : c.objects) {
        if (auto* s = std::get_if<CarLightState>(&o.state)) out.push_back(&s->timer);
        if (auto* s = std::get_if<PedLightState>(&o.state)) out.push_back(&s->timer);
        if (auto* s = std::get_if<FailureEnvState>(&o.state)) out.push_back(&s->timer);
        if (auto* s = std::get_if<PeriodicEnvState>(&o.state)) out.push_back(&s->time_to_next);
        if (auto* s = std::get_if<EmergencyEnvState>(&o.state)) out.push_back(&s->time_to_next);
    }
    return out;
}

/// Random walk from the initial state of `spec`; `on_step` sees each
/// transition and returns false to stop.
template <class F>
void walk(const ScenarioSpec& spec, std::mt19937_64& rng, std::size_t steps, F&& on_step) {
    Configuration cur = build_init(spec);
    TimeValue now = 0_tu;
    for (std::size_t i = 0; i < steps; ++i) {
        auto succs = all_successors(cur, spec.params);
        if (succs.empty()) return;
        KeyedSuccessor& s = succs[rng() % succs.size()];
        const TimeValue then = now + s.duration;
        if (!on_step(cur, s, then)) return;
        cur = std::move(s.next);
        now = then;
    }
}

int error_level(const Object& o) {
    if (auto* s = std::get_if<CarLightState>(&o.state)) return s->state.is_error() ? s->state.errors : 0;
    if (auto* s = std::get_if<PedLightState>(&o.state)) return s->mode.phase == PedPhase::error ? s->mode.errors : 0;
    return -1;
}

}  // namespace

std::vector<ScenarioSpec> scenario_pool() {
    std::vector<ScenarioSpec> pool;
    pool.push_back(make_init("Spitsbergen", 5, 6, 0, 0, 0, 1, 1));
    pool.push_back(make_init("Spitsbergen", 5, 6, 2, 0, 0, 1, 1));
    pool.push_back(make_init("Spitsbergen", 5, 6, 0, 1, 0, 2, 9));
    pool.push_back(make_init("Spitsbergen", 5, 6, 0, 2, 2, 1, 1));
    pool.push_back(make_init("Oslo", 4, 7, 3, 1, 1, 2, 3));
    ScenarioSpec eu = make_init("Bergen", 5, 6, 2, 1, 0, 3, 2);
    eu.params.regime = Regime::european;
    pool.push_back(eu);
    ScenarioSpec two = make_init("Spitsbergen", 5, 6, 0, 0, 0, 1, 1);
    two.extra_intersections.push_back({"Tromso", 3_tu, 6_tu});
    pool.push_back(two);
    return pool;
}

std::vector<Configuration> sample_states(std::mt19937_64& rng, std::size_t count, std::vector<Params>* params) {
    static const std::vector<ScenarioSpec> pool = scenario_pool();
    std::vector<Configuration> out;
    while (out.size() < count) {
        const ScenarioSpec& spec = pool[rng() % pool.size()];
        const std::size_t len = 20 + rng() % 300;
        walk(spec, rng, len, [&](const Configuration& c, const KeyedSuccessor&, TimeValue) {
            out.push_back(c);
            if (params) params->push_back(spec.params);
            return out.size() < count;
        });
    }
    return out;
}

Configuration shuffled(Configuration c, std::mt19937_64& rng) {
    for (std::size_t i = c.objects.size(); i > 1; --i) std::swap(c.objects[i - 1], c.objects[rng() % i]);
    for (std::size_t i = c.messages.size(); i > 1; --i) std::swap(c.messages[i - 1], c.messages[rng() % i]);
    return c;
}

Outcome permutation_invariance(std::uint64_t seed, std::size_t cases) {
    Outcome r{"permutation invariance"};
    std::mt19937_64 rng(seed);
    std::vector<Params> params;
    const auto states = sample_states(rng, cases, &params);
    for (std::size_t i = 0; i < states.size() && r.ok; ++i) {
        const Configuration& c = states[i];
        const Configuration s = shuffled(c, rng);
        ++r.cases;
        if (canonical_key(c) != canonical_key(s)) r.fail("canonical key depends on order:\n" + to_string(c));
        if (max_time_elapse(c) != max_time_elapse(s)) r.fail("max_time_elapse depends on order");
        const auto a = all_successors(c, params[i]);
        const auto b = all_successors(s, params[i]);
        bool same = a.size() == b.size();
        for (std::size_t k = 0; same && k < a.size(); ++k) same = a[k].rule == b[k].rule && a[k].key == b[k].key;
        if (!same) r.fail("successors depend on order:\n" + to_string(c));
    }
    return r;
}

Outcome maximal_progress(std::uint64_t seed, std::size_t cases) {
    Outcome r{"maximal progress"};
    std::mt19937_64 rng(seed);
    std::vector<Params> params;
    const auto states = sample_states(rng, cases, &params);
    for (std::size_t i = 0; i < states.size() && r.ok; ++i) {
        const Configuration& c = states[i];
        ++r.cases;
        TimeValue expect = kInf;
        for (const TimeValue* t : timers(c)) expect = std::min(expect, *t);
        if (!c.messages.empty()) expect = 0_tu;
        const TimeValue d = max_time_elapse(c);
        if (d != expect) {
            r.fail("max_time_elapse " + d.to_string() + ", expected " + expect.to_string() + "\n" + to_string(c));
            break;
        }
        const auto succs = all_successors(c, params[i]);
        const auto ticks = std::count_if(succs.begin(), succs.end(), [](const auto& s) { return s.rule == kTickRule; });
        if (d.is_zero() || d.is_infinite()) {
            if (ticks != 0) r.fail("time advances although it must not:\n" + to_string(c));
            if (d.is_zero() && succs.empty()) r.fail("time is blocked and no rule is enabled:\n" + to_string(c));
            continue;
        }
        if (ticks != 1) {
            r.fail("expected exactly one tick successor");
            continue;
        }
        const Configuration after = tick(c, d);
        bool expired = false;
        for (const TimeValue* t : timers(after)) expired = expired || t->is_zero();
        if (!expired) r.fail("maximal tick leaves no expired timer");
        for (std::uint64_t smaller = 1; smaller < d.units(); ++smaller) {
            for (const TimeValue* t : timers(tick(c, TimeValue(smaller))))
                if (t->is_zero()) r.fail("a shorter tick already expires a timer");
        }
        try {
            (void)tick(c, d + 1_tu);
            r.fail("tick past the deadline accepted");
        } catch (const std::invalid_argument&) {
        }
    }
    return r;
}

Outcome monus_laws(std::uint64_t seed, std::size_t cases) {
    Outcome r{"monus laws"};
    std::mt19937_64 rng(seed);
    auto draw = [&] { return rng() % 10 == 0 ? kInf : TimeValue(rng() % 50); };
    auto finite = [&] { return TimeValue(rng() % 50); };
    for (std::size_t i = 0; i < cases && r.ok; ++i) {
        ++r.cases;
        const TimeValue a = draw(), b = finite(), c = finite();
        std::ostringstream at;
        at << " for a=" << a.to_string() << " b=" << b.to_string() << " c=" << c.to_string();
        if (monus(a, 0_tu) != a) r.fail("a monus 0 != a" + at.str());
        if (a.is_finite() && !monus(a, a).is_zero()) r.fail("a monus a != 0" + at.str());
        if (monus(a + b, b) != a) r.fail("(a + b) monus b != a" + at.str());
        if (monus(monus(a, b), c) != monus(a, b + c)) r.fail("(a monus b) monus c != a monus (b + c)" + at.str());
        if (monus(a, b) > a) r.fail("a monus b > a" + at.str());
        if (monus(a, b) + b != std::max(a, b)) r.fail("(a monus b) + b != max(a, b)" + at.str());
        if (a.is_finite() && monus(a, b).units() != (a.units() > b.units() ? a.units() - b.units() : 0))
            r.fail("monus differs from truncated subtraction" + at.str());
        try {
            (void)monus(a, kInf);
            r.fail("monus by infinity accepted" + at.str());
        } catch (const std::invalid_argument&) {
        }
    }
    return r;
}

Outcome normalize_idempotence(std::uint64_t seed, std::size_t cases) {
    Outcome r{"normalize idempotence"};
    std::mt19937_64 rng(seed);
    const auto states = sample_states(rng, cases);
    for (const Configuration& base : states) {
        if (!r.ok) break;
        ++r.cases;
        Configuration c = base;
        std::vector<std::string> xings;
        for (const Object& o : c.objects)
            if (o.id.kind == OidKind::carLight && o.id.dir == Direction::NS) xings.push_back(o.id.xing);
        const std::size_t extra = rng() % 4;
        for (std::size_t k = 0; k < extra; ++k) {
            const std::string& x = xings[rng() % xings.size()];
            c.send(rng() % 2 ? Message::emergency_xing(x) : Message::emergency_over_xing(x));
        }
        const auto dev_count = [](const Configuration& x) {
            return std::count_if(x.messages.begin(), x.messages.end(), [](const Message& m) {
                return m.kind == MsgKind::emergencyDev || m.kind == MsgKind::emergencyOverDev;
            });
        };
        const Configuration n1 = normalize(shuffled(c, rng));
        const Configuration n2 = normalize(n1);
        if (!is_normalized(n1)) r.fail("normalize result still has crossing-level signals");
        if (canonical_key(n1) != canonical_key(n2)) r.fail("normalize is not idempotent");
        if (dev_count(n1) != dev_count(c) + 2 * static_cast<long>(extra))
            r.fail("each crossing signal must become exactly two device signals");
        if (n1.messages.size() != c.messages.size() + extra) r.fail("normalize changed unrelated messages");
    }
    return r;
}

Outcome key_roundtrip(std::uint64_t seed, std::size_t cases) {
    Outcome r{"canonical key round trip"};
    std::mt19937_64 rng(seed);
    for (const Configuration& c : sample_states(rng, cases)) {
        if (!r.ok) break;
        ++r.cases;
        const std::string key = canonical_key(c);
        const Configuration back = decode_key(key);
        if (canonical_key(back) != key) r.fail("decode/encode changes the key");
        if (to_string(back) != to_string(c)) r.fail("decoded configuration differs:\n" + to_string(c));
    }
    return r;
}

Outcome failure_count(std::uint64_t seed, std::size_t cases) {
    Outcome r{"failure count"};
    std::mt19937_64 rng(seed);
    while (r.cases < cases && r.ok) {
        const int carf = static_cast<int>(rng() % 3);
        const int pedf = carf == 0 ? 1 + static_cast<int>(rng() % 2) : static_cast<int>(rng() % 3);
        const ScenarioSpec spec = make_init("Spitsbergen", 5, 6, rng() % 2 ? 0 : 2, carf, pedf,
                                            1 + static_cast<unsigned>(rng() % 3), 1 + static_cast<unsigned>(rng() % 9));
        walk(spec, rng, 400, [&](const Configuration& c, const KeyedSuccessor&, TimeValue) {
            if (!c.messages.empty()) return true;
            int down = 0;
            for (const Object& o : c.objects)
                if (auto* f = std::get_if<FailureEnvState>(&o.state)) down += f->down;
            ++r.cases;
            for (const Object& o : c.objects) {
                const int level = error_level(o);
                if (level >= 0 && level != down) {
                    r.fail(o.id.to_string() + " is at error level " + std::to_string(level) + " with " +
                           std::to_string(down) + " devices down:\n" + to_string(c));
                    return false;
                }
            }
            return r.cases < cases;
        });
    }
    return r;
}

Outcome emergency_alternation(std::uint64_t seed, std::size_t cases) {
    Outcome r{"emergency alternation"};
    std::mt19937_64 rng(seed);
    while (r.cases < cases && r.ok) {
        const ScenarioSpec spec =
            make_init("Spitsbergen", 5, 6, 1 + static_cast<unsigned>(rng() % 4), static_cast<int>(rng() % 2), 0, 2, 3);
        bool expect_start = true;
        walk(spec, rng, 300, [&](const Configuration&, const KeyedSuccessor& s, TimeValue) {
            std::size_t starts = 0, overs = 0;
            for (const Message& m : s.next.messages) {
                starts += m.kind == MsgKind::emergencyDev && m.to.kind == OidKind::carLight;
                overs += m.kind == MsgKind::emergencyOverDev;
            }
            const bool start = s.rule == "emergencyStart", over = s.rule == "emergencyOver";
            if (!start && !over) return true;
            ++r.cases;
            if (start != expect_start) {
                r.fail(std::string("emission out of order: ") + std::string(s.rule));
                return false;
            }
            if ((start && starts < 2) || (over && overs < 2)) {
                r.fail("emission did not reach both car lights");
                return false;
            }
            expect_start = !expect_start;
            return r.cases < cases;
        });
    }
    return r;
}

Outcome failure_separation(std::uint64_t seed, std::size_t cases) {
    Outcome r{"failure separation"};
    std::mt19937_64 rng(seed);
    while (r.cases < cases && r.ok) {
        const TimeValue sep(1 + rng() % 9);
        const ScenarioSpec spec = make_init("Spitsbergen", 5, 6, 0, 2, 2, 1 + static_cast<unsigned>(rng() % 3),
                                            static_cast<unsigned>(sep.units()));
        std::map<std::string, TimeValue> repaired_at;
        std::map<std::string, bool> down;
        walk(spec, rng, 400, [&](const Configuration& c, const KeyedSuccessor& s, TimeValue now) {
            if (s.rule != "failDevice" && s.rule != "repairDevice") return true;
            for (const Object& o : s.next.objects) {
                const auto* f = std::get_if<FailureEnvState>(&o.state);
                if (!f) continue;
                const auto* before = c.state_of<FailureEnvState>(o.id);
                if (before->down == f->down) continue;
                const std::string dev = o.id.to_string();
                if (f->down) {
                    ++r.cases;
                    if (down[dev]) r.fail(dev + " failed while already down");
                    if (auto it = repaired_at.find(dev); it != repaired_at.end() && now < it->second + sep)
                        r.fail(dev + " failed at " + now.to_string() + ", repaired at " + it->second.to_string());
                } else {
                    if (!down[dev]) r.fail(dev + " repaired while up");
                    repaired_at[dev] = now;
                }
                down[dev] = f->down;
            }
            return r.ok && r.cases < cases;
        });
    }
    return r;
}

std::vector<ltl::FormulaPtr> oracle_patterns() {
    using namespace crosslight::ltl;
    const auto a = prop(0), b = prop(1), c = prop(2), d = prop(3);
    return {
        leadsto(land(a, lnot(b)), weak_until(a, c)),
        leadsto(land(land(a, lnot(b)), lnot(c)), weak_until(a, lor(d, c))),
        implies(always(implies(a, eventually(b))), implies(always(eventually(c)), always(eventually(d)))),
        always(land(lnot(land(a, b)), lnot(land(c, d)))),
        always(lnot(land(a, b))),
    };
}

Outcome checker_agreement(std::uint64_t seed, std::size_t structures) {
    Outcome r{"checker agrees with graph oracles"};
    std::mt19937_64 rng(seed);
    const auto patterns = oracle_patterns();
    for (std::size_t i = 0; i < structures && r.ok; ++i) {
        const std::size_t n = 1 + rng() % 8;
        const Kripke k = oracle::random_kripke(rng, n, 4);
        for (std::size_t f = 0; f < patterns.size(); ++f) {
            ++r.cases;
            const auto lasso = check_ltl(k, patterns[f]);
            const bool expected = oracle::pattern_holds(k, static_cast<int>(f));
            const std::string where = " (structure " + std::to_string(i) + ", pattern " + std::to_string(f) + ")";
            // The enumeration is exponential; on tiny structures it checks
            // the graph oracle itself.
            if (n <= 3 && oracle::holds_on_all_lassos(k, patterns[f], oracle::lasso_bound(n)) != expected) {
                r.fail("graph oracle disagrees with lasso enumeration" + where);
                break;
            }
            if (lasso.has_value() == expected) {
                r.fail(std::string(expected ? "spurious counterexample" : "missed violation") + where);
                break;
            }
            if (lasso) {
                try {
                    if (oracle::holds_on(patterns[f], oracle::word_of(k, *lasso)))
                        r.fail("counterexample satisfies the formula" + where);
                } catch (const std::logic_error& e) {
                    r.fail(std::string("malformed counterexample: ") + e.what() + where);
                }
            }
        }
    }
    return r;
}

RoundLog run_rounds(const ScenarioSpec& spec, std::size_t rounds) {
    Configuration cur = build_lights(spec.xing, Direction::NS, spec.green_time, spec.red_time, spec.params);
    auto events = std::make_shared<const std::vector<Message>>(std::vector<Message>{
        Message::new_cars(Oid::approach(spec.xing, Direction::NS)),
        Message::new_cars(Oid::approach(spec.xing, Direction::EW)),
    });
    cur.add({Oid::env_cars_peds(spec.xing), PeriodicEnvState{1_tu, 0_tu, events}});
    cur = normalize(std::move(cur));

    const Oid ns = Oid::car_light(spec.xing, Direction::NS);
    const Oid ew = Oid::car_light(spec.xing, Direction::EW);
    struct Track {
        std::string color;
        std::uint64_t since = 0;
        bool first = true;
        std::vector<Phase>* out;
    };
    RoundLog log;
    Track tn{cur.state_of<CarLightState>(ns)->lights.to_string(), 0, true, &log.ns};
    Track te{cur.state_of<CarLightState>(ew)->lights.to_string(), 0, true, &log.ew};
    std::uint64_t now = 0;
    auto observe = [&](Track& t, const Oid& id) {
        const std::string color = cur.state_of<CarLightState>(id)->lights.to_string();
        if (color == t.color) return;
        if (!t.first) t.out->push_back({t.color, now - t.since});
        t.first = false;
        t.color = color;
        t.since = now;
    };

    const std::size_t needed = 3 * rounds + 3;
    for (std::size_t guard = 0; guard < 1'000'000 && (log.ns.size() < needed || log.ew.size() < needed); ++guard) {
        auto succs = all_successors(cur, spec.params);
        std::erase_if(succs, [](const KeyedSuccessor& s) { return s.rule == "allCarsPass"; });
        if (succs.empty()) break;
        auto pick = succs.begin();
        for (auto it = succs.begin(); it != succs.end(); ++it) {
            if (it->rule == "generateSubsetAndReset" &&
                (pick->rule != "generateSubsetAndReset" || it->next.messages.size() > pick->next.messages.size()))
                pick = it;
        }
        now += pick->duration.units();
        cur = std::move(pick->next);
        observe(tn, ns);
        observe(te, ew);
    }
    return log;
}

Outcome round_length_conservation(std::size_t rounds) {
    Outcome r{"round-length conservation"};
    const ScenarioSpec spec = make_init("Spitsbergen", 5, 6, 0, 0, 0, 1, 1);
    const RoundLog log = run_rounds(spec, rounds);
    const Params& p = spec.params;
    const CarLightState* ew = build_lights(spec.xing, Direction::NS, spec.green_time, spec.red_time, p)
                                  .state_of<CarLightState>(Oid::car_light(spec.xing, Direction::EW));
    auto check = [&](const std::vector<Phase>& phases, std::string_view dir, TimeValue red, TimeValue green) {
        std::map<std::string, std::uint64_t> expected{
            {"red", red.units()}, {"green", green.units()}, {"yellow", p.yellow_time.units()}};
        std::size_t greens = 0;
        for (const Phase& ph : phases) {
            auto it = expected.find(ph.color);
            if (it == expected.end()) {
                r.fail(std::string(dir) + " showed unexpected lights " + ph.color);
                return;
            }
            if (ph.length != it->second) {
                r.fail(std::string(dir) + " " + ph.color + " phase lasted " + std::to_string(ph.length) +
                       ", expected " + std::to_string(it->second));
                return;
            }
            greens += ph.color == "green";
        }
        r.cases = r.cases == 0 ? greens : std::min(r.cases, greens);
        if (greens < rounds) r.fail(std::string(dir) + " completed only " + std::to_string(greens) + " rounds");
    };
    check(log.ns, "NS", spec.red_time, spec.green_time);
    check(log.ew, "EW", ew->red_time, ew->green_time);
    return r;
}

}  // namespace props
