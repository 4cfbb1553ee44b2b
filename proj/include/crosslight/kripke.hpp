#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crosslight/configuration.hpp"
#include "crosslight/objects.hpp"
#include "crosslight/props.hpp"

namespace crosslight {

/// Explicit transition graph in compressed rows. State 0 is initial.
/// Each state carries a valuation bitmask; each edge a rule id and a duration
/// (nonzero only for ticks).
struct Kripke {
    std::vector<std::uint64_t> valuation;
    std::vector<std::uint64_t> row;  // edges of s are [row[s], row[s+1])
    std::vector<std::uint32_t> target;
    std::vector<std::uint16_t> rule;
    std::vector<std::uint32_t> duration;
    std::vector<std::string> rule_names;

    std::size_t size() const { return valuation.size(); }
    std::size_t edge_count() const { return target.size(); }
    std::uint64_t begin(std::size_t s) const { return row[s]; }
    std::uint64_t end(std::size_t s) const { return row[s + 1]; }
};

/// Label of the self-loop added to states without successors.
inline constexpr std::string_view kDeadlockRule = "deadlock";

class ResourceError : public Error {
public:
    ResourceError(std::size_t states, std::size_t cap)
        : Error("state cap of " + std::to_string(cap) + " exceeded after " + std::to_string(states) + " states"),
          states_(states) {}
    std::size_t states() const { return states_; }

private:
    std::size_t states_;
};

/// 20,000,000 unless CROSSLIGHT_STATE_CAP holds a positive integer.
std::size_t default_state_cap();

struct ExploreOptions {
    std::size_t state_cap = default_state_cap();
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Canonical keys of all states, stored back to back.
class KeyStore {
public:
    std::size_t size() const { return offsets_.size() - 1; }
    std::string_view operator[](std::size_t i) const {
        return {bytes_.data() + offsets_[i], static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
    }
    void push(std::string_view k) {
        bytes_.insert(bytes_.end(), k.begin(), k.end());
        offsets_.push_back(bytes_.size());
    }
    std::size_t memory() const { return bytes_.capacity() + offsets_.capacity() * sizeof(std::uint64_t); }

private:
    std::vector<char> bytes_;
    std::vector<std::uint64_t> offsets_{0};
};

struct StateGraph {
    Kripke kripke;
    KeyStore keys;
    Params params;
    std::size_t max_branching = 0;

    Configuration state(std::size_t s) const { return decode_key(keys[s]); }
};

/// Reachable graph of `init` under all_successors, with states labelled by
/// `props` (bit i for props[i]). States without successors get a self-loop.
/// The result does not depend on the thread count. Throws ResourceError when
/// more than `state_cap` states are found.
StateGraph build_state_graph(const Configuration& init, const Params& p, const std::vector<AtomicProp>& props,
                             const ExploreOptions& opt = {});

}  // namespace crosslight
