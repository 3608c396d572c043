#include "random_models.hpp"

namespace opaq::testing {

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

Constraint random_guard(std::mt19937_64& rng, const Model& m, const RandomModelOptions& o) {
    static constexpr Rel closed[] = {Rel::Le, Rel::Ge, Rel::Eq};
    static constexpr Rel all[] = {Rel::Le, Rel::Ge, Rel::Eq, Rel::Lt, Rel::Gt};
    Constraint c;
    const std::size_t atoms = below(rng, 3);
    for (std::size_t i = 0; i < atoms; ++i) {
        AtomicConstraint a;
        a.clock = below(rng, m.clocks.size());
        a.rel = o.strict ? all[below(rng, 5)] : closed[below(rng, 3)];
        a.constant = Rational(static_cast<std::int64_t>(below(rng, static_cast<std::size_t>(o.max_constant) + 1)));
        c.conjuncts.push_back(a);
    }
    return c;
}

}  // namespace

Model random_model(std::mt19937_64& rng, const RandomModelOptions& o) {
    Model m;
    const std::size_t nc = 1 + below(rng, o.max_clocks);
    for (std::size_t i = 0; i < nc; ++i) m.clocks.push_back("x" + std::to_string(i));
    const std::size_t nl = 3 + below(rng, o.max_locations - 2);
    for (std::size_t i = 0; i < nl; ++i) m.locations.push_back("l" + std::to_string(i));
    m.init = 0;
    m.priv = 1;
    m.final = 2;
    m.invariants.resize(nl);
    for (std::size_t l = 0; l < nl; ++l) {
        if (l == m.final || below(rng, 3) != 0) continue;
        AtomicConstraint a;
        a.clock = below(rng, nc);
        a.rel = o.strict && below(rng, 2) == 0 ? Rel::Lt : Rel::Le;
        a.constant = Rational(static_cast<std::int64_t>(1 + below(rng, static_cast<std::size_t>(o.max_constant))));
        m.invariants[l].conjuncts.push_back(a);
    }
    auto edge = [&](LocId s, LocId t) {
        Edge e;
        e.source = s;
        e.target = t;
        e.guard = random_guard(rng, m, o);
        for (ClockId x = 0; x < nc; ++x)
            if (below(rng, 3) == 0) e.resets.push_back(x);
        e.action = "a" + std::to_string(m.edges.size());
        m.edges.push_back(std::move(e));
    };
    edge(0, 1);
    edge(1, 2);
    edge(0, 2);
    const std::size_t extra = below(rng, 5);
    for (std::size_t i = 0; i < extra; ++i) edge(below(rng, nl), below(rng, nl));
    validate(m);
    return m;
}

DurationSet random_duration_set(std::mt19937_64& rng, std::int64_t scale) {
    auto pick = [&](std::size_t n) { return static_cast<std::int64_t>(below(rng, n)); };
    auto interval = [&](std::int64_t lo_max, std::int64_t width_max) {
        const std::int64_t lo = pick(static_cast<std::size_t>(lo_max) + 1);
        const std::int64_t hi = lo + pick(static_cast<std::size_t>(width_max) + 1);
        Interval iv{Rational(lo), below(rng, 2) == 0, Rational(hi), below(rng, 2) == 0};
        if (lo == hi) iv.lo_closed = iv.hi_closed = true;
        return iv;
    };
    std::vector<Interval> initial;
    const std::size_t n = below(rng, 4);
    for (std::size_t i = 0; i < n; ++i) initial.push_back(interval(4 * scale, 2 * scale));
    if (below(rng, 3) == 0) {
        if (below(rng, 2) == 0) initial.push_back(Interval::unbounded(Rational(pick(8 * scale)), below(rng, 2) == 0));
        return DurationSet::from_intervals(initial, scale);
    }
    const std::int64_t threshold = 7 * scale;
    const std::int64_t period = 1 + pick(static_cast<std::size_t>(3 * scale));
    std::vector<Interval> base;
    const std::size_t nb = below(rng, 3);
    for (std::size_t i = 0; i < nb; ++i) {
        Interval iv = interval(period - 1, period);
        iv.lo += threshold;
        *iv.hi = std::min(Rational(*iv.hi + threshold), Rational(threshold + period));
        if (*iv.hi == threshold + period) iv.hi_closed = false;
        if (iv.lo == *iv.hi) iv.lo_closed = iv.hi_closed = true;
        if (iv.lo == *iv.hi && iv.lo == threshold + period) continue;
        base.push_back(iv);
    }
    return DurationSet::periodic(initial, threshold, period, base, scale);
}

}  // namespace opaq::testing
