#include "opaq/durset.hpp"

#include "random_models.hpp"

#include <doctest.h>

using namespace opaq;

namespace {

bool in_interval(const Interval& iv, const Rational& x) {
    bool lo = iv.lo_closed ? x >= iv.lo : x > iv.lo;
    bool hi = !iv.hi || (iv.hi_closed ? x <= *iv.hi : x < *iv.hi);
    return lo && hi;
}

// Sample points at a quarter of the scaled unit, up to a horizon.
std::vector<Rational> probes(std::int64_t scale, std::int64_t upto) {
    std::vector<Rational> out;
    for (std::int64_t k = 0; k <= 4 * upto * scale; ++k) out.emplace_back(k, 4 * scale);
    return out;
}

}  // namespace

TEST_SUITE("durset") {
    TEST_CASE("intervals render and merge") {
        auto s = DurationSet::from_intervals({Interval::closed(1, 2), Interval::point(2), Interval::open(2, 3)});
        CHECK(s.to_string() == "[1, 3)");
        CHECK(DurationSet::empty().to_string() == "{}");
        CHECK(DurationSet::from_intervals({Interval::point(5)}).to_string() == "{5}");
        CHECK(DurationSet::from_intervals({Interval::unbounded(0, true)}).to_string() == "[0, inf)");
        auto scaled = DurationSet::from_intervals({Interval::closed(2, 5)}, 2);
        CHECK(scaled.to_string() == "[1, 2.5]");
        CHECK(scaled.contains(Rational(5, 2)));
        CHECK_FALSE(scaled.contains(Rational(26, 10)));
    }

    TEST_CASE("periodic membership follows the definition") {
        std::vector<Interval> initial{Interval::closed(0, 1)};
        std::vector<Interval> base{Interval::point(3), Interval::open(3, 4)};  // [3, 4) repeated every 2
        auto s = DurationSet::periodic(initial, 3, 2, base);
        for (const auto& x : probes(1, 20)) {
            bool expected = in_interval(initial[0], x);
            if (x >= 3) {
                Rational r = x - 3;
                Integer k = floor_div(r / 2);
                Rational off = r - 2 * Rational(k);
                expected = off < 1;
            }
            CHECK(s.contains(x) == expected);
        }
        CHECK(s.is_periodic());
        CHECK(s.period() == 2);
    }

    TEST_CASE("normal form minimizes period and threshold") {
        // {k : k >= 1} as points with period 2 and threshold 4: same as period 1 from 1.
        auto a = DurationSet::periodic({Interval::point(1), Interval::point(2), Interval::point(3)}, 4, 2,
                                       {Interval::point(4), Interval::point(5)});
        auto b = DurationSet::periodic({}, 1, 1, {Interval::point(1)});
        CHECK(a == b);
        CHECK(a.threshold() == 1);
        CHECK(a.period() == 1);
        // Full base becomes an unbounded tail.
        auto tail = DurationSet::periodic({}, 2, 3, {Interval{Rational(2), true, Rational(5), false}});
        CHECK_FALSE(tail.is_periodic());
        CHECK(tail.to_string() == "[2, inf)");
        // Empty base: finite set.
        CHECK_FALSE(DurationSet::periodic({Interval::point(1)}, 2, 2, {}).is_periodic());
    }

    TEST_CASE("fraction classes") {
        using E = EventuallyPeriodicIntSet;
        auto s = DurationSet::from_annotations(
            {{FracClass::Zero, E::finite({1, 2})}, {FracClass::Open, E::finite({1})}, {FracClass::One, E::finite({0})}});
        CHECK(s.to_string() == "[1, 2]");
        CHECK(s == DurationSet::from_intervals({Interval::closed(1, 2)}));
    }

    TEST_CASE("boolean operations agree pointwise") {
        std::mt19937_64 rng(21);
        for (int i = 0; i < 150; ++i) {
            DurationSet a = testing::random_duration_set(rng, 2);
            DurationSet b = testing::random_duration_set(rng, 1 + static_cast<std::int64_t>(rng() % 2));
            auto u = set_union(a, b);
            auto n = set_intersection(a, b);
            auto c = set_complement(a);
            auto d = set_difference(a, b);
            for (const auto& x : probes(2, 30)) {
                const bool ia = a.contains(x), ib = b.contains(x);
                REQUIRE(u.contains(x) == (ia || ib));
                REQUIRE(n.contains(x) == (ia && ib));
                REQUIRE(c.contains(x) == !ia);
                REQUIRE(d.contains(x) == (ia && !ib));
            }
        }
    }

    TEST_CASE("witness is a member") {
        std::mt19937_64 rng(4);
        for (int i = 0; i < 200; ++i) {
            DurationSet a = testing::random_duration_set(rng, 2);
            auto w = a.witness();
            CHECK(w.has_value() == !a.is_empty());
            if (w) CHECK(a.contains(*w));
        }
        auto open = DurationSet::from_intervals({Interval::open(1, 2)});
        CHECK(*open.witness() == Rational(3, 2));
    }

    TEST_CASE("JSON round trip") {
        std::mt19937_64 rng(8);
        for (int i = 0; i < 100; ++i) {
            DurationSet a = testing::random_duration_set(rng, 2);
            auto j = to_json(a);
            DurationSet back = duration_set_from_json(nlohmann::json::parse(j.dump()));
            CHECK(back == a);
            CHECK(to_json(back).dump() == j.dump());
        }
    }

    TEST_CASE("rescaling keeps membership") {
        auto a = DurationSet::periodic({Interval::open(0, 1)}, 2, 3, {Interval::point(2)}, 2);
        auto b = a.rescaled(6);
        for (const auto& x : probes(6, 12)) CHECK(a.contains(x) == b.contains(x));
        CHECK(set_equals(a, b));
        CHECK_THROWS((void)a.rescaled(3));
    }
}
