#include "crosslight/buchi.hpp"

#include <map>
#include <set>
#include <tuple>

namespace crosslight {

namespace {

using ltl::Op;

/// NNF subformulas interned to small integers.
struct Table {
    struct Entry {
        Op op;
        int prop;
        int a;
        int b;
    };
    std::vector<Entry> entries;
    std::map<std::tuple<Op, int, int, int>, int> index;

    int intern(const ltl::FormulaPtr& f) {
        int a = -1, b = -1, p = -1;
        Op op = f->op;
        if (op == Op::Not) {
            p = f->lhs->prop;  // NNF: negation only on propositions
        } else if (op == Op::Prop) {
            p = f->prop;
        } else if (op != Op::True && op != Op::False) {
            a = intern(f->lhs);
            b = intern(f->rhs);
        }
        const auto key = std::make_tuple(op, p, a, b);
        if (auto it = index.find(key); it != index.end()) return it->second;
        entries.push_back({op, p, a, b});
        return index[key] = static_cast<int>(entries.size() - 1);
    }
};

struct Node {
    std::set<int> incoming;
    std::set<int> fresh;
    std::set<int> old;
    std::set<int> next;
};

constexpr int kInit = -1;

class Tableau {
public:
    explicit Tableau(const Table& t) : t_(t) {}

    std::vector<Node> run(int root) {
        std::vector<int> queue;
        attach(kInit, {root}, queue);
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int d = queue[q];
            attach(d, done_[static_cast<std::size_t>(d)].next, queue);
        }
        return std::move(done_);
    }

private:
    using Cover = std::pair<std::set<int>, std::set<int>>;  // (old, next)

    /// Links `from` to every fully expanded node of `obligations`, creating
    /// the nodes that do not exist yet.
    void attach(int from, const std::set<int>& obligations, std::vector<int>& queue) {
        auto it = covers_.find(obligations);
        if (it == covers_.end()) it = covers_.emplace(obligations, expand_set(obligations)).first;
        for (const Cover& c : it->second) {
            const int id = static_cast<int>(done_.size());
            auto [at, fresh] = index_.try_emplace(c, id);
            if (fresh) {
                done_.push_back({{}, {}, c.first, c.second});
                queue.push_back(id);
            }
            done_[static_cast<std::size_t>(at->second)].incoming.insert(from);
        }
    }

    bool contradicts(const Node& n, const Table::Entry& lit) const {
        for (int o : n.old) {
            const auto& e = t_.entries[static_cast<std::size_t>(o)];
            if (e.prop == lit.prop && ((e.op == Op::Prop && lit.op == Op::Not) || (e.op == Op::Not && lit.op == Op::Prop)))
                return true;
        }
        return false;
    }

    static void add_fresh(Node& n, int f) {
        if (!n.old.count(f)) n.fresh.insert(f);
    }

    /// Keeps what distinguishes states of the automaton: literals, and
    /// untils still waiting for their right operand. Nodes that agree on
    /// this and on their next set accept the same words.
    std::set<int> project(const std::set<int>& old) const {
        std::set<int> kept;
        for (int o : old) {
            const auto& e = t_.entries[static_cast<std::size_t>(o)];
            if (e.op == Op::Prop || e.op == Op::Not || (e.op == Op::Until && !old.count(e.b))) kept.insert(o);
        }
        return kept;
    }

    /// All consistent (old, next) covers of a set of obligations.
    std::vector<Cover> expand_set(const std::set<int>& obligations) const {
        std::vector<Cover> out;
        std::set<Cover> seen;
        std::vector<Node> work(1);
        work[0].fresh = obligations;
        while (!work.empty()) {
            Node n = std::move(work.back());
            work.pop_back();
            if (!expand(n, work)) continue;
            Cover c{project(n.old), std::move(n.next)};
            if (seen.insert(c).second) out.push_back(std::move(c));
        }
        return out;
    }

    /// Decomposes `n` in place; second branches of a split go to `work`.
    /// Returns false when the node is contradictory.
    bool expand(Node& n, std::vector<Node>& work) const {
        while (!n.fresh.empty()) {
            const int eta = *n.fresh.begin();
            n.fresh.erase(n.fresh.begin());
            if (n.old.count(eta)) continue;
            const auto& e = t_.entries[static_cast<std::size_t>(eta)];
            switch (e.op) {
                case Op::False: return false;
                case Op::True: n.old.insert(eta); break;
                case Op::Prop:
                case Op::Not:
                    if (contradicts(n, e)) return false;
                    n.old.insert(eta);
                    break;
                case Op::And:
                    add_fresh(n, e.a);
                    add_fresh(n, e.b);
                    n.old.insert(eta);
                    break;
                case Op::Or:
                case Op::Until:
                case Op::Release: {
                    n.old.insert(eta);
                    Node other = n;
                    if (e.op == Op::Or) {
                        add_fresh(n, e.a);
                        add_fresh(other, e.b);
                    } else if (e.op == Op::Until) {
                        add_fresh(n, e.a);
                        n.next.insert(eta);
                        add_fresh(other, e.b);
                    } else {
                        add_fresh(n, e.b);
                        n.next.insert(eta);
                        add_fresh(other, e.a);
                        add_fresh(other, e.b);
                    }
                    work.push_back(std::move(other));
                    break;
                }
                default: throw Error("formula not in negation normal form");
            }
        }
        return true;
    }

    const Table& t_;
    std::vector<Node> done_;
    std::map<Cover, int> index_;
    std::map<std::set<int>, std::vector<Cover>> covers_;
};

}  // namespace

Buchi ltl_to_buchi(const ltl::FormulaPtr& f) {
    if (ltl::max_prop(f) >= 64) throw Error("at most 64 propositions are supported");
    Table table;
    const int root = table.intern(ltl::to_nnf(f));
    const std::vector<Node> nodes = Tableau(table).run(root);

    std::vector<int> untils;
    for (std::size_t i = 0; i < table.entries.size(); ++i)
        if (table.entries[i].op == Op::Until) untils.push_back(static_cast<int>(i));
    const std::size_t sets = untils.size();
    const std::size_t copies = sets == 0 ? 1 : sets;

    // in_set[s][k]: node s belongs to acceptance set k.
    std::vector<std::vector<bool>> in_set(nodes.size(), std::vector<bool>(sets));
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        for (std::size_t k = 0; k < sets; ++k) {
            const int u = untils[k];
            in_set[s][k] = !nodes[s].old.count(u) || nodes[s].old.count(table.entries[static_cast<std::size_t>(u)].b);
        }
    }

    Buchi out;
    out.states.resize(nodes.size() * copies);
    auto id = [&](std::size_t s, std::size_t k) { return static_cast<std::uint32_t>(s * copies + k); };
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        std::uint64_t pos = 0, neg = 0;
        for (int o : nodes[s].old) {
            const auto& e = table.entries[static_cast<std::size_t>(o)];
            if (e.op == Op::Prop) pos |= std::uint64_t{1} << e.prop;
            if (e.op == Op::Not) neg |= std::uint64_t{1} << e.prop;
        }
        for (std::size_t k = 0; k < copies; ++k) {
            auto& st = out.states[id(s, k)];
            st.pos = pos;
            st.neg = neg;
            st.accepting = sets == 0 || (k == 0 && in_set[s][0]);
        }
        for (int r : nodes[s].incoming) {
            if (r == kInit) {
                out.initial.push_back(id(s, 0));
                continue;
            }
            for (std::size_t k = 0; k < copies; ++k) {
                const std::size_t nk = sets != 0 && in_set[static_cast<std::size_t>(r)][k] ? (k + 1) % copies : k;
                out.states[id(static_cast<std::size_t>(r), k)].succ.push_back(id(s, nk));
            }
        }
    }
    return out;
}

}  // namespace crosslight
