#include "opaq/region.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace opaq {

std::string_view to_string(FracClass c) {
    switch (c) {
        case FracClass::Zero: return "zero";
        case FracClass::Open: return "open";
        case FracClass::One: return "one";
    }
    return "?";
}

std::size_t RegionHash::operator()(const Region& r) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < r.ints.size(); ++i) {
        h ^= std::hash<std::int64_t>{}((static_cast<std::int64_t>(r.ints[i]) << 20) ^ r.frac[i]) + 0x9e3779b9 +
             (h << 6) + (h >> 2);
    }
    return h;
}

RegionSpace::RegionSpace(std::vector<std::int64_t> caps) : caps_(std::move(caps)) {
    for (auto c : caps_)
        if (c < 0 || c > (1 << 28)) throw std::invalid_argument("clock cap out of range");
}

Region RegionSpace::initial() const {
    return Region{std::vector<std::int32_t>(caps_.size(), 0), std::vector<std::int32_t>(caps_.size(), 0)};
}

void RegionSpace::compress(Region& r) {
    std::vector<std::int32_t> used;
    for (auto f : r.frac)
        if (f > 0) used.push_back(f);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (auto& f : r.frac)
        if (f > 0) f = static_cast<std::int32_t>(std::lower_bound(used.begin(), used.end(), f) - used.begin()) + 1;
}

bool RegionSpace::is_maximal(const Region& r) const {
    for (ClockId x = 0; x < caps_.size(); ++x)
        if (!is_above(r, x)) return false;
    return true;
}

Region RegionSpace::delay_successor(const Region& r) const {
    Region s = r;
    bool any_zero = false;
    for (ClockId x = 0; x < caps_.size(); ++x)
        if (!is_above(r, x) && r.frac[x] == 0) any_zero = true;

    if (any_zero) {
        // Integral clocks leave their integer point and become the smallest fraction.
        for (ClockId x = 0; x < caps_.size(); ++x) {
            if (is_above(r, x)) continue;
            if (r.frac[x] > 0) {
                s.frac[x] = r.frac[x] + 1;
            } else if (r.ints[x] == caps_[x]) {
                s.ints[x] = static_cast<std::int32_t>(caps_[x] + 1);
                s.frac[x] = 0;
            } else {
                s.frac[x] = 1;
            }
        }
    } else {
        std::int32_t top = 0;
        for (auto f : r.frac) top = std::max(top, f);
        if (top == 0) return s;  // maximal region
        // The largest fractional class reaches the next integer.
        for (ClockId x = 0; x < caps_.size(); ++x) {
            if (r.frac[x] == top) {
                s.ints[x] = r.ints[x] + 1;
                s.frac[x] = 0;
            }
        }
    }
    compress(s);
    return s;
}

bool RegionSpace::satisfies(const Region& r, const AtomicConstraint& a) const {
    if (a.is_parametric() || !is_integer(a.constant))
        throw std::invalid_argument("region guards must be parameter-free with integer constants");
    const Integer c = numerator(a.constant);
    const ClockId x = a.clock;
    if (c > caps_[x]) throw std::logic_error("guard constant exceeds the clock cap");
    if (is_above(r, x)) return a.rel == Rel::Gt || a.rel == Rel::Ge;

    const Integer i = r.ints[x];
    if (r.frac[x] == 0) {
        switch (a.rel) {
            case Rel::Lt: return i < c;
            case Rel::Le: return i <= c;
            case Rel::Eq: return i == c;
            case Rel::Ge: return i >= c;
            case Rel::Gt: return i > c;
        }
    }
    // i < value < i + 1
    switch (a.rel) {
        case Rel::Lt:
        case Rel::Le: return i + 1 <= c;
        case Rel::Eq: return false;
        case Rel::Ge:
        case Rel::Gt: return i >= c;
    }
    return false;
}

bool RegionSpace::satisfies(const Region& r, const Constraint& c) const {
    return std::all_of(c.conjuncts.begin(), c.conjuncts.end(),
                       [&](const AtomicConstraint& a) { return satisfies(r, a); });
}

std::optional<Region> RegionSpace::discrete_successor(const Region& r, const Constraint& guard,
                                                      const std::vector<ClockId>& resets) const {
    if (!satisfies(r, guard)) return std::nullopt;
    Region s = r;
    for (ClockId x : resets) {
        s.ints[x] = 0;
        s.frac[x] = 0;
    }
    compress(s);
    return s;
}

FracClass RegionSpace::t_class(const Region& r, ClockId x) const {
    if (caps_[x] != 1) throw std::logic_error("fraction classification needs a clock with cap 1");
    if (is_above(r, x)) throw std::logic_error("bounded clock is above its cap");
    if (r.frac[x] != 0) return FracClass::Open;
    return r.ints[x] == 0 ? FracClass::Zero : FracClass::One;
}

std::vector<Rational> RegionSpace::sample_valuation(const Region& r) const {
    std::int32_t top = 0;
    for (auto f : r.frac) top = std::max(top, f);
    std::vector<Rational> v(caps_.size());
    for (ClockId x = 0; x < caps_.size(); ++x) {
        if (is_above(r, x)) v[x] = Rational(caps_[x]) + Rational(1, 2);
        else v[x] = Rational(r.ints[x]) + Rational(r.frac[x], top + 1);
    }
    return v;
}

Region RegionSpace::region_of(const std::vector<Rational>& valuation) const {
    Region r = initial();
    std::vector<Rational> fracs(caps_.size());
    for (ClockId x = 0; x < caps_.size(); ++x) {
        const Rational& v = valuation[x];
        Integer whole = floor_div(v);
        if (v > caps_[x]) {
            r.ints[x] = static_cast<std::int32_t>(caps_[x] + 1);
            continue;
        }
        r.ints[x] = to_int64(whole);
        fracs[x] = v - Rational(whole);
    }
    std::vector<Rational> distinct;
    for (ClockId x = 0; x < caps_.size(); ++x)
        if (!is_above(r, x) && fracs[x] != 0) distinct.push_back(fracs[x]);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (ClockId x = 0; x < caps_.size(); ++x) {
        if (is_above(r, x) || fracs[x] == 0) continue;
        r.frac[x] = static_cast<std::int32_t>(std::lower_bound(distinct.begin(), distinct.end(), fracs[x]) -
                                              distinct.begin()) + 1;
    }
    return r;
}

std::string RegionSpace::describe(const Region& r, const std::vector<std::string>& names) const {
    std::ostringstream out;
    std::map<std::int32_t, std::vector<std::string>> classes;
    for (ClockId x = 0; x < caps_.size(); ++x) {
        if (x > 0) out << ' ';
        const std::string& n = names[x];
        if (is_above(r, x)) {
            out << n << '>' << caps_[x];
        } else if (r.frac[x] == 0) {
            out << n << '=' << r.ints[x];
        } else {
            out << n << "∈(" << r.ints[x] << ',' << r.ints[x] + 1 << ')';
            classes[r.frac[x]].push_back(n);
        }
    }
    if (!classes.empty()) {
        out << " frac:";
        bool first = true;
        for (const auto& [rank, members] : classes) {
            out << (first ? " " : " < ");
            first = false;
            for (std::size_t i = 0; i < members.size(); ++i) out << (i ? "=" : "") << members[i];
        }
    }
    return out.str();
}

long double RegionSpace::region_count_bound() const {
    long double bound = 1;
    for (std::size_t i = 1; i <= caps_.size(); ++i) bound *= static_cast<long double>(i) * 2;
    for (auto c : caps_) bound *= static_cast<long double>(2 * c + 2);
    return bound;
}

}  // namespace opaq
