// crosslight: model checking and simulation of the intersection controller.

#include <sys/resource.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crosslight/checker.hpp"
#include "crosslight/kripke.hpp"
#include "crosslight/scenarios.hpp"
#include "crosslight/trace.hpp"

using namespace crosslight;

namespace {

enum Exit { kHolds = 0, kViolated = 1, kError = 2 };

struct Common {
    std::string scenario_file;
    std::string init_args;
    std::size_t state_cap = 0;
    unsigned threads = 0;
    std::string trace_out;

    ExploreOptions explore() const {
        ExploreOptions o;
        if (state_cap) o.state_cap = state_cap;
        o.threads = threads;
        return o;
    }

    /// Scenario from --scenario or --init; `fallback` when neither is given.
    ScenarioSpec scenario(const std::optional<ScenarioSpec>& fallback = std::nullopt) const {
        if (!scenario_file.empty() && !init_args.empty()) throw Error("give either --scenario or --init, not both");
        if (!scenario_file.empty()) return load_scenario(scenario_file);
        if (!init_args.empty()) return parse_init_args(init_args);
        if (fallback) return *fallback;
        throw Error("no scenario: pass --scenario FILE or --init XING,GREEN,RED,T,CARF,PEDF,N1,N2");
    }
};

double peak_memory_mib() {
    rusage u{};
    getrusage(RUSAGE_SELF, &u);
    return static_cast<double>(u.ru_maxrss) / 1024.0;
}

class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

    void field(std::string_view name, const std::string& value) { fields_.emplace_back(name, value); }

    void print(std::string_view verdict, std::size_t states) const {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::ostringstream o;
        o << "command: " << command_ << '\n';
        for (const auto& [k, v] : fields_) o << k << ": " << v << '\n';
        o.setf(std::ios::fixed);
        o.precision(2);
        o << "wall time: " << secs << " s\n";
        o << "peak memory: " << peak_memory_mib() << " MiB\n";
        o << "VERDICT=" << verdict << " STATES=" << states << '\n';
        std::cout << o.str();
    }

private:
    std::string command_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::pair<std::string, std::string>> fields_;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

int report_result(Report& rep, const ScenarioSpec& spec, const CheckResult& r, const Common& c) {
    rep.field("verdict", r.verdict.holds ? "holds" : "violated");
    rep.field("states", std::to_string(r.states));
    rep.field("transitions", std::to_string(r.transitions));
    if (!r.verdict.holds && r.verdict.counterexample) {
        const std::string path = c.trace_out.empty() ? "counterexample.trace" : c.trace_out;
        write_file(path, write_trace(spec, *r.verdict.counterexample));
        rep.field("counterexample", path + " (" + std::to_string(r.verdict.counterexample->steps.size()) + " steps)");
    }
    rep.print(r.verdict.holds ? "holds" : "violated", r.states);
    return r.verdict.holds ? kHolds : kViolated;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--scenario", c.scenario_file, "Scenario file")->check(CLI::ExistingFile);
    app->add_option("--init", c.init_args, "Inline scenario: XING,GREEN,RED,T,CARF,PEDF,N1,N2");
    app->add_option("--state-cap", c.state_cap, "Maximum number of states (default 20000000 or $CROSSLIGHT_STATE_CAP)");
    app->add_option("--threads", c.threads, "Worker threads for state-space expansion (0: all cores)");
}

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model checker and simulator for a decentralized traffic-light controller"};
    app.require_subcommand(0, 1);

    std::string replay_file;
    app.add_option("--replay", replay_file, "Re-execute a trace file and report divergence");

    Common mc_opts;
    std::string property, formula;
    unsigned tau = 15;
    auto* mc = app.add_subcommand("mc", "Check a catalog property or an LTL formula");
    add_common(mc, mc_opts);
    auto* prop_opt = mc->add_option("--property", property, "Catalog property: P1 P2 P3 P4 P4x P5");
    mc->add_option("--formula", formula, "LTL formula, e.g. \"[] ~ (driving(NS) /\\ driving(EW))\"")->excludes(prop_opt);
    mc->add_option("--tau", tau, "Response bound for P5");
    mc->add_option("--trace-out", mc_opts.trace_out, "Counterexample file (default counterexample.trace)");

    Common br_opts;
    std::string p_text = "pedArriving(NS)", q_text = "walking(NS)";
    unsigned br_tau = 15;
    auto* br = app.add_subcommand("br", "Bounded response: every p-state is followed by a q-state within tau");
    add_common(br, br_opts);
    br->add_option("--p", p_text, "Trigger proposition");
    br->add_option("--q", q_text, "Response proposition");
    br->add_option("--tau", br_tau, "Bound in time units");
    br->add_option("--trace-out", br_opts.trace_out, "Counterexample file (default counterexample.trace)");

    Common sim_opts;
    std::size_t steps = 100;
    std::uint64_t seed = 1;
    auto* sim = app.add_subcommand("simulate", "Write one pseudo-random run as a trace");
    add_common(sim, sim_opts);
    sim->add_option("--steps", steps, "Number of transitions")->check(CLI::PositiveNumber);
    sim->add_option("--seed", seed, "Random seed");
    sim->add_option("--trace-out", sim_opts.trace_out, "Output file (default: standard output)");

    Common stats_opts;
    auto* stats = app.add_subcommand("stats", "Count reachable states and transitions");
    add_common(stats, stats_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    Report rep(command_line(argc, argv));
    try {
        if (!replay_file.empty()) {
            std::ifstream in(replay_file);
            if (!in) throw Error("cannot open " + replay_file);
            std::ostringstream buf;
            buf << in.rdbuf();
            const ReplayResult r = replay_trace(buf.str());
            std::cout << "replay: " << (r.ok ? "ok, " : "DIVERGED at ") << r.message << '\n';
            return r.ok ? kHolds : kViolated;
        }

        if (mc->parsed()) {
            if (property.empty() && formula.empty()) throw Error("mc needs --property or --formula");
            if (!property.empty()) {
                const ScenarioSpec spec = mc_opts.scenario(catalog_scenario(property));
                rep.field("scenario", describe(spec));
                rep.field("property", property);
                rep.field("formula", is_catalog_ltl(property)
                                         ? catalog_formula(property)
                                         : "pedArriving(NS) => <>le(" + std::to_string(tau) + ") walking(NS)");
                const CheckResult r = check_property_catalog(spec, property, TimeValue(tau), mc_opts.explore());
                return report_result(rep, spec, r, mc_opts);
            }
            const ScenarioSpec spec = mc_opts.scenario();
            const ModelFormula f = parse_model_formula(formula, spec.xing);
            rep.field("scenario", describe(spec));
            rep.field("formula", f.to_string());
            const CheckResult r = model_check_ltl(build_init(spec), spec.params, f, mc_opts.explore());
            return report_result(rep, spec, r, mc_opts);
        }

        if (br->parsed()) {
            const ScenarioSpec spec = br_opts.scenario();
            const AtomicProp p = parse_prop(p_text, spec.xing);
            const AtomicProp q = parse_prop(q_text, spec.xing);
            rep.field("scenario", describe(spec));
            rep.field("formula", p.to_string() + " => <>le(" + std::to_string(br_tau) + ") " + q.to_string());
            const CheckResult r =
                check_bounded_response(build_init(spec), spec.params, p, q, TimeValue(br_tau), br_opts.explore());
            return report_result(rep, spec, r, br_opts);
        }

        if (sim->parsed()) {
            const ScenarioSpec spec = sim_opts.scenario();
            const std::string text = write_trace(spec, simulate(spec, steps, seed));
            if (sim_opts.trace_out.empty()) std::cout << text;
            else write_file(sim_opts.trace_out, text);
            return kHolds;
        }

        if (stats->parsed()) {
            const ScenarioSpec spec = stats_opts.scenario();
            const StateGraph g = build_state_graph(build_init(spec), spec.params, {}, stats_opts.explore());
            rep.field("scenario", describe(spec));
            rep.field("states", std::to_string(g.kripke.size()));
            rep.field("transitions", std::to_string(g.kripke.edge_count()));
            rep.field("max branching", std::to_string(g.max_branching));
            rep.print("holds", g.kripke.size());
            return kHolds;
        }

        std::cout << app.help();
        return kError;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        rep.print("error", e.states());
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::cout << "VERDICT=error STATES=0\n";
        return kError;
    }
}
