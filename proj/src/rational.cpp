#include "opaq/rational.hpp"

#include <cctype>

namespace opaq {

Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

Integer floor_div(const Rational& r) {
    Integer n = numerator(r);
    Integer d = denominator(r);
    Integer q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

Integer ceil_div(const Rational& r) {
    Integer q = floor_div(r);
    if (Rational(q) != r) ++q;
    return q;
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_integer(std::string_view s) {
    if (!all_digits(s)) throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational r;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer den = parse_integer(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        r = Rational(parse_integer(s.substr(0, slash)), den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty())
            throw std::invalid_argument("not a number: '" + std::string(text) + "'");
        Integer w = whole.empty() ? Integer(0) : parse_integer(whole);
        Integer f = frac.empty() ? Integer(0) : parse_integer(frac);
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
        r = Rational(w * scale + f, scale);
    } else {
        r = Rational(parse_integer(s));
    }
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    Integer n = numerator(r);
    Integer d = denominator(r);
    if (d == 1) return n.str();

    // Finite decimal iff the denominator has no prime factors besides 2 and 5.
    Integer rest = d;
    unsigned twos = 0;
    unsigned fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return n.str() + "/" + d.str();

    unsigned digits = std::max(twos, fives);
    Integer scaled = n * boost::multiprecision::pow(Integer(10), digits) / d;
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string s = scaled.str();
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
    return negative ? "-" + s : s;
}

std::int64_t to_int64(const Integer& i) { return i.convert_to<std::int64_t>(); }

DeltaBound::DeltaBound(Rational value) : value_(std::move(value)) {
    if (*value_ < 0) throw std::invalid_argument("expiration bound must be non-negative");
}

DeltaBound DeltaBound::parse(std::string_view text) {
    if (text == "inf") return infinity();
    return DeltaBound(parse_rational(text));
}

const Rational& DeltaBound::value() const {
    if (!value_) throw std::logic_error("infinite expiration bound has no finite value");
    return *value_;
}

std::string DeltaBound::to_string() const { return value_ ? opaq::to_string(*value_) : "inf"; }

}  // namespace opaq
