#pragma once

// Exact duration sets: eventually periodic unions of rational intervals over
// the non-negative reals. All endpoints, the threshold and the period are in
// scaled units (the integer rescaling factor of the analysed model); the
// public accessors taking or returning durations use real units.

#include "opaq/intset.hpp"
#include "opaq/rational.hpp"
#include "opaq/region.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace opaq {

struct Interval {
    Rational lo;
    bool lo_closed = true;
    std::optional<Rational> hi;  // nullopt: +inf
    bool hi_closed = true;

    static Interval point(Rational v) { return {v, true, v, true}; }
    static Interval closed(Rational lo, Rational hi) { return {std::move(lo), true, std::move(hi), true}; }
    static Interval open(Rational lo, Rational hi) { return {std::move(lo), false, std::move(hi), false}; }
    static Interval unbounded(Rational lo, bool lo_closed) { return {std::move(lo), lo_closed, std::nullopt, false}; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

namespace detail {

// Boundary between reals: just before `value`, just after it, or +inf.
struct Cut {
    Rational value;
    bool after = false;
    bool infinite = false;

    friend bool operator==(const Cut&, const Cut&) = default;
    friend bool operator<(const Cut& a, const Cut& b) {
        if (a.infinite || b.infinite) return !a.infinite && b.infinite;
        if (a.value != b.value) return a.value < b.value;
        return !a.after && b.after;
    }
    friend bool operator<=(const Cut& a, const Cut& b) { return !(b < a); }
};

// Non-empty half-open range [first, second) of cuts.
using Span = std::pair<Cut, Cut>;
// Sorted, disjoint, non-touching spans.
using SpanList = std::vector<Span>;

}  // namespace detail

class DurationSet {
public:
    DurationSet() = default;  // empty, scale 1

    static DurationSet empty(std::int64_t scale = 1);
    // Union of finitely many intervals (scaled units).
    static DurationSet from_intervals(const std::vector<Interval>& intervals, std::int64_t scale = 1);
    // initial ∪ ⋃_{k≥0} (base + k·period); base must lie within
    // [threshold, threshold + period) and initial below the threshold.
    static DurationSet periodic(const std::vector<Interval>& initial, std::int64_t threshold, std::int64_t period,
                                const std::vector<Interval>& base, std::int64_t scale = 1);
    // Tick counts per fraction class: zero ↦ {k}, open ↦ (k, k+1), one ↦ {k+1}.
    static DurationSet from_annotations(const std::vector<std::pair<FracClass, EventuallyPeriodicIntSet>>& entries,
                                        std::int64_t scale = 1);

    [[nodiscard]] std::int64_t scale() const { return scale_; }
    [[nodiscard]] std::vector<Interval> initial() const;
    [[nodiscard]] std::optional<std::int64_t> threshold() const { return threshold_; }
    [[nodiscard]] std::optional<std::int64_t> period() const { return period_; }
    [[nodiscard]] std::vector<Interval> base() const;
    [[nodiscard]] bool is_periodic() const { return threshold_.has_value(); }

    [[nodiscard]] DurationSet rescaled(std::int64_t new_scale) const;

    [[nodiscard]] bool is_empty() const { return initial_.empty() && !threshold_; }
    // Membership of a duration given in real units.
    [[nodiscard]] bool contains(const Rational& duration) const;
    // Least member if attained, otherwise the midpoint of the first open
    // unit cell; real units. nullopt for the empty set.
    [[nodiscard]] std::optional<Rational> witness() const;
    // Largest finite endpoint or threshold + period, in scaled units: every
    // structural feature of the set lies below it.
    [[nodiscard]] Rational horizon() const;

    // Interval notation in real units, `{}` when empty.
    [[nodiscard]] std::string to_string() const;

    friend DurationSet set_union(const DurationSet& a, const DurationSet& b);
    friend DurationSet set_intersection(const DurationSet& a, const DurationSet& b);
    // Complement within the non-negative reals.
    friend DurationSet set_complement(const DurationSet& a);

    // Structural equality of the normal form (same scale required for true).
    friend bool operator==(const DurationSet&, const DurationSet&) = default;

private:
    struct Window;

    static DurationSet normalize(std::int64_t scale, Rational threshold, Rational period, detail::SpanList pre,
                                 detail::SpanList base);
    [[nodiscard]] Window window(const Rational& threshold, const Rational& period) const;
    [[nodiscard]] detail::SpanList restrict_to(const Rational& lo, const Rational& hi) const;
    [[nodiscard]] Rational finite_extent() const;

    std::int64_t scale_ = 1;
    detail::SpanList initial_;
    std::optional<std::int64_t> threshold_;
    std::optional<std::int64_t> period_;
    detail::SpanList base_;
};

DurationSet set_union(const DurationSet& a, const DurationSet& b);
DurationSet set_intersection(const DurationSet& a, const DurationSet& b);
DurationSet set_complement(const DurationSet& a);

// Binary operations bring both operands to the lcm of their scales.
bool is_subset(const DurationSet& a, const DurationSet& b);
bool set_equals(const DurationSet& a, const DurationSet& b);
DurationSet set_difference(const DurationSet& a, const DurationSet& b);

nlohmann::ordered_json to_json(const DurationSet& s);
DurationSet duration_set_from_json(const nlohmann::json& j);

}  // namespace opaq
