#include "crosslight/checker.hpp"

#include <algorithm>
#include <array>

namespace crosslight {

namespace {

enum Mark : std::uint8_t { white = 0, cyan, blue, red };

constexpr std::uint64_t kNoEdge = ~std::uint64_t{0};

/// Product successor enumeration: Kripke edge `e` of k, Büchi successor j of b.
struct Frame {
    std::uint32_t k;
    std::uint32_t b;
    std::uint64_t e;
    std::uint32_t j;
    std::uint64_t in_edge;
};

class NestedDfs {
public:
    NestedDfs(const Kripke& k, const Buchi& b) : k_(k), b_(b), color_(k.size() * b.states.size(), white) {}

    std::optional<Lasso> run() {
        if (k_.size() == 0) return std::nullopt;
        for (std::uint32_t b0 : b_.initial) {
            if (!b_.admits(b0, k_.valuation[0]) || color_[id(0, b0)] != white) continue;
            if (auto l = blue_search(b0)) return l;
        }
        return std::nullopt;
    }

private:
    std::size_t id(std::uint32_t k, std::uint32_t b) const { return std::size_t{k} * b_.states.size() + b; }
    bool accepting(std::uint32_t b) const { return b_.states[b].accepting; }

    /// Advances `f` to its next product successor.
    bool next(Frame& f, std::uint32_t& t, std::uint32_t& bt, std::uint64_t& edge) const {
        const auto& succ = b_.states[f.b].succ;
        if (f.e == kNoEdge) f.e = k_.begin(f.k);
        for (; f.e < k_.end(f.k); ++f.e, f.j = 0) {
            t = k_.target[f.e];
            for (; f.j < succ.size(); ++f.j) {
                bt = succ[f.j];
                if (b_.admits(bt, k_.valuation[t])) {
                    edge = f.e;
                    ++f.j;
                    return true;
                }
            }
        }
        return false;
    }

    Lasso lasso(std::uint32_t k, std::uint32_t b, const std::vector<std::uint64_t>& tail) const {
        std::size_t at = 0;
        while (!(stack_[at].k == k && stack_[at].b == b)) ++at;
        Lasso l;
        for (std::size_t i = 1; i <= at; ++i) l.prefix.push_back(stack_[i].in_edge);
        for (std::size_t i = at + 1; i < stack_.size(); ++i) l.cycle.push_back(stack_[i].in_edge);
        l.cycle.insert(l.cycle.end(), tail.begin(), tail.end());
        return l;
    }

    std::optional<Lasso> blue_search(std::uint32_t b0) {
        stack_.clear();
        stack_.push_back({0, b0, kNoEdge, 0, kNoEdge});
        color_[id(0, b0)] = cyan;
        while (!stack_.empty()) {
            Frame& top = stack_.back();
            std::uint32_t t = 0, bt = 0;
            std::uint64_t e = 0;
            if (next(top, t, bt, e)) {
                const std::uint8_t c = color_[id(t, bt)];
                if (c == cyan && (accepting(top.b) || accepting(bt))) return lasso(t, bt, {e});
                if (c == white) {
                    color_[id(t, bt)] = cyan;
                    stack_.push_back({t, bt, kNoEdge, 0, e});
                }
                continue;
            }
            if (accepting(top.b)) {
                if (auto l = red_search(top.k, top.b)) return l;
                color_[id(top.k, top.b)] = red;
            } else {
                color_[id(top.k, top.b)] = blue;
            }
            stack_.pop_back();
        }
        return std::nullopt;
    }

    std::optional<Lasso> red_search(std::uint32_t k, std::uint32_t b) {
        std::vector<Frame> rs{{k, b, kNoEdge, 0, kNoEdge}};
        while (!rs.empty()) {
            Frame& top = rs.back();
            std::uint32_t t = 0, bt = 0;
            std::uint64_t e = 0;
            if (!next(top, t, bt, e)) {
                rs.pop_back();
                continue;
            }
            const std::uint8_t c = color_[id(t, bt)];
            if (c == cyan) {
                std::vector<std::uint64_t> tail;
                for (std::size_t i = 1; i < rs.size(); ++i) tail.push_back(rs[i].in_edge);
                tail.push_back(e);
                return lasso(t, bt, tail);
            }
            if (c == blue) {
                color_[id(t, bt)] = red;
                rs.push_back({t, bt, kNoEdge, 0, e});
            }
        }
        return std::nullopt;
    }

    const Kripke& k_;
    const Buchi& b_;
    std::vector<std::uint8_t> color_;
    std::vector<Frame> stack_;
};

struct PropTable {
    std::vector<AtomicProp> props;
    std::string default_xing;

    int resolve(std::string_view name, const std::vector<std::string>& args) {
        AtomicProp a = crosslight::bind(make_prop(name, args), default_xing);
        for (std::size_t i = 0; i < props.size(); ++i)
            if (props[i] == a) return static_cast<int>(i);
        props.push_back(std::move(a));
        return static_cast<int>(props.size() - 1);
    }
};

CheckResult finish(const StateGraph& g, const std::optional<Lasso>& l) {
    CheckResult r;
    r.states = g.kripke.size();
    r.transitions = g.kripke.edge_count();
    r.max_branching = g.max_branching;
    r.verdict.holds = !l.has_value();
    if (l) r.verdict.counterexample = to_trace(g, *l);
    return r;
}

struct CatalogEntry {
    std::string_view name;
    std::string_view formula;
    std::array<unsigned, 7> init;  // green, red, emergency, carFaults, pedFaults, N1, N2
};

constexpr std::array<CatalogEntry, 6> kCatalog = {{
    {"P1",
     "((pedLightRed(EW) /\\ ~ buttonPushed(EW)) => (pedLightRed(EW) W pedArriving(EW))) /\\ "
     "((pedLightRed(NS) /\\ ~ buttonPushed(NS)) => (pedLightRed(NS) W pedArriving(NS)))",
     {5, 6, 2, 0, 0, 1, 1}},
    {"P2",
     "(carLightRed(NS) /\\ ~ buttonPushed(NS) /\\ ~ carWaiting(NS)) => "
     "(carLightRed(NS) W (pedArriving(NS) \\/ carArriving(NS)))",
     {5, 6, 2, 0, 0, 1, 1}},
    {"P3", "([] (failure -> <> repair)) -> (([] <> carArriving(NS)) -> ([] <> carLightGreen(NS)))",
     {5, 6, 0, 1, 0, 2, 9}},
    {"P4", "[] ((~ (walking(NS) /\\ driving(EW))) /\\ (~ (walking(EW) /\\ driving(NS))))", {5, 6, 0, 1, 0, 2, 9}},
    {"P4x", "[] ~ (driving(NS) /\\ driving(EW))", {5, 6, 0, 1, 0, 2, 9}},
    {"P5", "", {5, 6, 0, 0, 0, 1, 1}},
}};

const CatalogEntry& catalog_entry(std::string_view name) {
    for (const auto& e : kCatalog)
        if (e.name == name) return e;
    throw Error("unknown property '" + std::string(name) + "' (expected P1, P2, P3, P4, P4x or P5)");
}

}  // namespace

std::optional<Lasso> find_accepting_lasso(const Kripke& k, const Buchi& b) { return NestedDfs(k, b).run(); }

std::optional<Lasso> check_ltl(const Kripke& k, const ltl::FormulaPtr& f) {
    const Buchi neg = ltl_to_buchi(ltl::lnot(f));
    return find_accepting_lasso(k, neg);
}

std::optional<Lasso> check_bounded_response(const Kripke& k, int p_bit, int q_bit, std::uint64_t bound) {
    if (k.size() == 0) return std::nullopt;
    // Pair (state, slot): slot 0 means no pending obligation, slot 1 + a an
    // oldest obligation of age a.
    const std::uint64_t slots = bound + 2;
    const std::uint64_t pm = std::uint64_t{1} << p_bit;
    const std::uint64_t qm = std::uint64_t{1} << q_bit;
    auto settle = [&](std::uint64_t slot, std::uint32_t s) -> std::uint64_t {
        const std::uint64_t v = k.valuation[s];
        if (v & qm) return 0;
        if (slot == 0 && (v & pm)) return 1;
        return slot;
    };

    struct Visit {
        std::uint32_t state;
        std::uint64_t slot;
        std::uint64_t parent;  // index into visits
        std::uint64_t edge;
    };
    std::vector<Visit> visits;
    std::vector<bool> seen(k.size() * slots, false);
    auto path = [&](std::uint64_t v) {
        std::vector<std::uint64_t> edges;
        for (; visits[v].edge != kNoEdge; v = visits[v].parent) edges.push_back(visits[v].edge);
        std::reverse(edges.begin(), edges.end());
        return edges;
    };

    const std::uint64_t s0 = settle(0, 0);
    visits.push_back({0, s0, 0, kNoEdge});
    seen[s0] = true;
    for (std::uint64_t v = 0; v < visits.size(); ++v) {
        const Visit cur = visits[v];
        for (std::uint64_t e = k.begin(cur.state); e < k.end(cur.state); ++e) {
            const std::uint32_t t = k.target[e];
            std::uint64_t slot = cur.slot;
            if (slot != 0) {
                if (t == cur.state && k.duration[e] == 0 && k.end(cur.state) - k.begin(cur.state) == 1) {
                    // Stuck with an obligation that can never be met.
                    return Lasso{path(v), {e}};
                }
                slot += k.duration[e];
                if (slot - 1 > bound) {
                    Lasso l{path(v), {}};
                    l.prefix.push_back(e);
                    return l;
                }
            }
            slot = settle(slot, t);
            const std::uint64_t pid = std::uint64_t{t} * slots + slot;
            if (seen[pid]) continue;
            seen[pid] = true;
            visits.push_back({t, slot, v, e});
        }
    }
    return std::nullopt;
}

Trace to_trace(const StateGraph& g, const Lasso& l) {
    Trace tr;
    tr.init = g.state(0);
    const Kripke& k = g.kripke;
    auto add = [&](std::uint64_t e) {
        tr.steps.push_back({k.rule_names[k.rule[e]], TimeValue(k.duration[e]), g.state(k.target[e])});
    };
    for (std::uint64_t e : l.prefix) add(e);
    if (!l.cycle.empty()) {
        tr.cycle_start = tr.steps.size();
        for (std::uint64_t e : l.cycle) add(e);
    }
    return tr;
}

std::string ModelFormula::to_string() const {
    return ltl::to_string(formula, [&](int i) { return props[static_cast<std::size_t>(i)].to_string(); });
}

ModelFormula parse_model_formula(std::string_view text, const std::string& default_xing) {
    PropTable table{{}, default_xing};
    ModelFormula m;
    m.formula = ltl::parse(text, [&](std::string_view name, const std::vector<std::string>& args) {
        return table.resolve(name, args);
    });
    m.props = std::move(table.props);
    return m;
}

AtomicProp parse_prop(std::string_view text, const std::string& default_xing) {
    ModelFormula m = parse_model_formula(text, default_xing);
    if (m.formula->op != ltl::Op::Prop) throw Error("expected a single proposition, got '" + std::string(text) + "'");
    return m.props.front();
}

CheckResult model_check_ltl(const Configuration& init, const Params& p, const ModelFormula& f,
                            const ExploreOptions& opt) {
    const Buchi neg = ltl_to_buchi(ltl::lnot(f.formula));
    const StateGraph g = build_state_graph(init, p, f.props, opt);
    return finish(g, find_accepting_lasso(g.kripke, neg));
}

CheckResult check_bounded_response(const Configuration& init, const Params& p, const AtomicProp& trigger,
                                   const AtomicProp& response, TimeValue bound, const ExploreOptions& opt) {
    if (bound.is_infinite()) throw Error("response bound must be finite");
    const StateGraph g = build_state_graph(init, p, {trigger, response}, opt);
    return finish(g, check_bounded_response(g.kripke, 0, 1, bound.units()));
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& e : kCatalog) names.emplace_back(e.name);
    return names;
}

bool is_catalog_ltl(std::string_view name) { return !catalog_entry(name).formula.empty(); }

std::string catalog_formula(std::string_view name) {
    const auto& e = catalog_entry(name);
    if (e.formula.empty()) throw Error(std::string(name) + " is a bounded-response property, not an LTL formula");
    return std::string(e.formula);
}

ScenarioSpec catalog_scenario(std::string_view name) {
    const auto& e = catalog_entry(name);
    const auto& a = e.init;
    return make_init("Spitsbergen", a[0], a[1], a[2], static_cast<int>(a[3]), static_cast<int>(a[4]), a[5], a[6]);
}

CheckResult check_property_catalog(const ScenarioSpec& spec, std::string_view name, TimeValue bound,
                                   const ExploreOptions& opt) {
    const auto& e = catalog_entry(name);
    const Configuration init = build_init(spec);
    if (e.formula.empty()) {
        const AtomicProp ped{PropKind::pedArriving, spec.xing, Direction::NS};
        const AtomicProp walk{PropKind::walking, spec.xing, Direction::NS};
        return check_bounded_response(init, spec.params, ped, walk, bound, opt);
    }
    return model_check_ltl(init, spec.params, parse_model_formula(e.formula, spec.xing), opt);
}

}  // namespace crosslight
