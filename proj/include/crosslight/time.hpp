#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace crosslight {

/// Discrete, non-negative time with an absorbing infinity element.
class TimeValue {
public:
    constexpr TimeValue() = default;
    constexpr explicit TimeValue(std::uint64_t units) : units_(units) {
        if (units == kInfinity) throw std::out_of_range("time value too large");
    }

    static constexpr TimeValue infinity() {
        TimeValue t;
        t.units_ = kInfinity;
        return t;
    }

    constexpr bool is_infinite() const { return units_ == kInfinity; }
    constexpr bool is_finite() const { return units_ != kInfinity; }
    constexpr bool is_zero() const { return units_ == 0; }

    /// Finite magnitude. Throws on infinity.
    constexpr std::uint64_t units() const {
        if (is_infinite()) throw std::logic_error("infinite time has no magnitude");
        return units_;
    }

    /// Raw encoding; infinity maps to the maximum value.
    constexpr std::uint64_t raw() const { return units_; }
    static constexpr TimeValue from_raw(std::uint64_t raw) {
        TimeValue t;
        t.units_ = raw;
        return t;
    }

    friend constexpr auto operator<=>(const TimeValue&, const TimeValue&) = default;

    friend constexpr TimeValue operator+(TimeValue a, TimeValue b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return TimeValue(a.units_ + b.units_);
    }

    /// Truncated subtraction: max(a - b, 0). The subtrahend must be finite.
    friend constexpr TimeValue monus(TimeValue a, TimeValue b) {
        if (b.is_infinite()) throw std::invalid_argument("monus by infinity");
        if (a.is_infinite()) return a;
        return TimeValue(a.units_ > b.units_ ? a.units_ - b.units_ : 0);
    }

    std::string to_string() const {
        return is_infinite() ? std::string("INF") : std::to_string(units_);
    }

private:
    static constexpr std::uint64_t kInfinity = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t units_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, TimeValue t) { return os << t.to_string(); }

inline constexpr TimeValue kInf = TimeValue::infinity();

constexpr TimeValue operator""_tu(unsigned long long n) { return TimeValue(n); }

}  // namespace crosslight
