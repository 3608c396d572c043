#pragma once

// Exact rational arithmetic used throughout the analyses. Every semantic
// computation (constraints, durations, polyhedra) goes through this type;
// no floating point is involved anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opaq {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

Integer lcm(const Integer& a, const Integer& b);
Integer floor_div(const Rational& r);
Integer ceil_div(const Rational& r);
bool is_integer(const Rational& r);

// Parses `7`, `-3`, `2.5`, `5/2`. Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Canonical text: integers as-is, finite decimal expansions in decimal
// notation (`2.75`), everything else as `a/b`.
std::string to_string(const Rational& r);

std::int64_t to_int64(const Integer& i);

// Non-negative rational or +infinity (the secret expiration bound).
class DeltaBound {
public:
    DeltaBound() = default;  // +inf
    explicit DeltaBound(Rational value);

    static DeltaBound infinity() { return DeltaBound{}; }
    static DeltaBound parse(std::string_view text);

    [[nodiscard]] bool is_infinite() const { return !value_.has_value(); }
    [[nodiscard]] const Rational& value() const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const DeltaBound&, const DeltaBound&) = default;

private:
    std::optional<Rational> value_;
};

}  // namespace opaq
