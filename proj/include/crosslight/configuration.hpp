#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crosslight/message.hpp"
#include "crosslight/objects.hpp"

namespace crosslight {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Global state: a multiset of objects and messages. Element order carries
/// no meaning; equality is decided on canonical keys.
struct Configuration {
    std::vector<Object> objects;
    std::vector<Message> messages;

    const Object* find(const Oid& id) const;
    Object* find(const Oid& id);

    template <class State>
    const State* state_of(const Oid& id) const {
        const Object* o = find(id);
        return o ? std::get_if<State>(&o->state) : nullptr;
    }
    template <class State>
    State* state_of(const Oid& id) {
        Object* o = find(id);
        return o ? std::get_if<State>(&o->state) : nullptr;
    }

    /// Adds an object; throws Error if the identifier is already present.
    void add(Object o);
    void send(Message m) { messages.push_back(std::move(m)); }
    void send_all(const std::vector<Message>& ms) { messages.insert(messages.end(), ms.begin(), ms.end()); }
};

/// Distributes crossing-level emergency signals to both car lights of the
/// crossing. Idempotent.
Configuration normalize(Configuration c);
bool is_normalized(const Configuration& c);

/// Injective, order-insensitive byte encoding of a configuration.
std::string canonical_key(const Configuration& c);

/// Inverse of canonical_key (up to element order). Throws Error on malformed input.
Configuration decode_key(std::string_view key);

/// Objects, messages and generator events sorted into canonical order.
Configuration canonical_form(Configuration c);

std::string to_string(const Configuration& c);

}  // namespace crosslight
