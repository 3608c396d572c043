#pragma once

// Clock regions: the finite time-abstract bisimulation quotient over a set of
// clocks with per-clock maximal constants. A region records, per clock, its
// integer part (or that it exceeds the cap) and whether its fraction is
// zero, together with the ordering of the nonzero fractions.

#include "opaq/model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace opaq {

enum class FracClass : std::uint8_t { Zero, Open, One };

std::string_view to_string(FracClass c);

struct Region {
    // ints[x] in [0, cap[x]], or cap[x] + 1 for "above cap".
    std::vector<std::int32_t> ints;
    // 0: fraction is zero (or clock above cap); k >= 1: k-th smallest
    // fractional class. Ranks are dense (1..K).
    std::vector<std::int32_t> frac;

    friend bool operator==(const Region&, const Region&) = default;
};

struct RegionHash {
    std::size_t operator()(const Region& r) const noexcept;
};

class RegionSpace {
public:
    explicit RegionSpace(std::vector<std::int64_t> caps);

    [[nodiscard]] std::size_t clock_count() const { return caps_.size(); }
    [[nodiscard]] std::int64_t cap(ClockId x) const { return caps_[x]; }

    [[nodiscard]] Region initial() const;

    // Next region in the time-flow order; the maximal region (every clock
    // above its cap) is its own successor.
    [[nodiscard]] Region delay_successor(const Region& r) const;
    [[nodiscard]] bool is_maximal(const Region& r) const;

    // Guards are rectangular and their constants never exceed the caps, so a
    // region satisfies a constraint either everywhere or nowhere.
    [[nodiscard]] bool satisfies(const Region& r, const AtomicConstraint& a) const;
    [[nodiscard]] bool satisfies(const Region& r, const Constraint& c) const;

    // Region after taking an edge, or nullopt when the guard blocks.
    [[nodiscard]] std::optional<Region> discrete_successor(const Region& r, const Constraint& guard,
                                                           const std::vector<ClockId>& resets) const;

    [[nodiscard]] bool is_above(const Region& r, ClockId x) const { return r.ints[x] > caps_[x]; }

    // Classification of a clock bounded by 1: exactly 0, strictly between, exactly 1.
    [[nodiscard]] FracClass t_class(const Region& r, ClockId x) const;

    // A concrete valuation inside the region.
    [[nodiscard]] std::vector<Rational> sample_valuation(const Region& r) const;

    // The region containing a concrete valuation.
    [[nodiscard]] Region region_of(const std::vector<Rational>& valuation) const;

    [[nodiscard]] std::string describe(const Region& r, const std::vector<std::string>& names) const;

    // |X|! · 2^|X| · Π (2·cap + 2)
    [[nodiscard]] long double region_count_bound() const;

private:
    static void compress(Region& r);

    std::vector<std::int64_t> caps_;
};

}  // namespace opaq
