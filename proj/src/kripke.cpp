#include "crosslight/kripke.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <thread>
#include <unordered_map>

#include "crosslight/kernel.hpp"

namespace crosslight {

namespace {

constexpr std::size_t kBatch = 4096;
constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

/// Open-addressing set of state ids keyed by their canonical bytes.
class StateIndex {
public:
    explicit StateIndex(const KeyStore& keys) : keys_(keys), slots_(1024, kEmpty) {}

    /// Id of `key`, or kEmpty with the slot to fill remembered.
    std::uint32_t find(std::string_view key) {
        const std::size_t mask = slots_.size() - 1;
        std::size_t i = hash(key) & mask;
        while (slots_[i] != kEmpty) {
            if (keys_[slots_[i]] == key) return slots_[i];
            i = (i + 1) & mask;
        }
        pending_ = i;
        return kEmpty;
    }

    /// Records the state just appended to the key store at the slot found by
    /// the last failed find.
    void insert_pending(std::uint32_t id) {
        slots_[pending_] = id;
        if (++count_ * 2 > slots_.size()) grow();
    }

private:
    static std::size_t hash(std::string_view k) { return std::hash<std::string_view>{}(k); }

    void grow() {
        std::vector<std::uint32_t> old(slots_.size() * 2, kEmpty);
        old.swap(slots_);
        const std::size_t mask = slots_.size() - 1;
        for (std::uint32_t id : old) {
            if (id == kEmpty) continue;
            std::size_t i = hash(keys_[id]) & mask;
            while (slots_[i] != kEmpty) i = (i + 1) & mask;
            slots_[i] = id;
        }
    }

    const KeyStore& keys_;
    std::vector<std::uint32_t> slots_;
    std::size_t pending_ = 0;
    std::size_t count_ = 0;
};

struct Expansion {
    std::uint64_t valuation = 0;
    std::vector<KeyedSuccessor> successors;
};

void expand(const KeyStore& keys, std::size_t s, const Params& p, const std::vector<AtomicProp>& props,
            Expansion& out) {
    Configuration c = decode_key(keys[s]);
    out.valuation = 0;
    for (std::size_t i = 0; i < props.size(); ++i)
        if (eval_prop(c, props[i])) out.valuation |= std::uint64_t{1} << i;
    out.successors = all_successors(c, p);
    // Only keys, rules and durations are kept.
    for (auto& k : out.successors) k.next = {};
}

}  // namespace

std::size_t default_state_cap() {
    if (const char* env = std::getenv("CROSSLIGHT_STATE_CAP")) {
        std::size_t v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
    }
    return 20'000'000;
}

StateGraph build_state_graph(const Configuration& init, const Params& p, const std::vector<AtomicProp>& props,
                             const ExploreOptions& opt) {
    if (props.size() > 64) throw Error("at most 64 propositions are supported");
    for (const AtomicProp& a : props) check_resolvable(init, a);
    const std::size_t cap = std::min<std::size_t>(opt.state_cap, kEmpty - 1);
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());

    StateGraph g;
    g.params = p;
    Kripke& k = g.kripke;
    StateIndex index(g.keys);
    std::unordered_map<std::string_view, std::uint16_t> rule_ids;
    auto rule_id = [&](std::string_view name) {
        auto [it, fresh] = rule_ids.try_emplace(name, static_cast<std::uint16_t>(k.rule_names.size()));
        if (fresh) k.rule_names.emplace_back(name);
        return it->second;
    };

    const std::string init_key = canonical_key(normalize(init));
    index.find(init_key);
    g.keys.push(init_key);
    index.insert_pending(0);
    k.row.push_back(0);

    std::vector<Expansion> batch;
    for (std::size_t lo = 0; lo < g.keys.size();) {
        const std::size_t hi = std::min(g.keys.size(), lo + kBatch);
        batch.assign(hi - lo, {});
        const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(hi - lo));
        if (workers <= 1) {
            for (std::size_t s = lo; s < hi; ++s) expand(g.keys, s, p, props, batch[s - lo]);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t s = lo + w; s < hi; s += workers) expand(g.keys, s, p, props, batch[s - lo]);
                });
            }
        }

        for (std::size_t s = lo; s < hi; ++s) {
            Expansion& e = batch[s - lo];
            k.valuation.push_back(e.valuation);
            g.max_branching = std::max(g.max_branching, e.successors.size());
            if (e.successors.empty()) {
                k.target.push_back(static_cast<std::uint32_t>(s));
                k.rule.push_back(rule_id(kDeadlockRule));
                k.duration.push_back(0);
            }
            for (const KeyedSuccessor& succ : e.successors) {
                std::uint32_t t = index.find(succ.key);
                if (t == kEmpty) {
                    if (g.keys.size() >= cap) throw ResourceError(g.keys.size() + 1, cap);
                    t = static_cast<std::uint32_t>(g.keys.size());
                    g.keys.push(succ.key);
                    index.insert_pending(t);
                }
                k.target.push_back(t);
                k.rule.push_back(rule_id(succ.rule));
                k.duration.push_back(static_cast<std::uint32_t>(succ.duration.units()));
            }
            k.row.push_back(k.target.size());
        }
        lo = hi;
    }
    return g;
}

}  // namespace crosslight
