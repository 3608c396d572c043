#include "opaq/oracle.hpp"

#include "opaq/tickgraph.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_set>

namespace opaq {

namespace {

bool compare(const Rational& lhs, Rel rel, const Rational& rhs) {
    switch (rel) {
        case Rel::Lt: return lhs < rhs;
        case Rel::Le: return lhs <= rhs;
        case Rel::Eq: return lhs == rhs;
        case Rel::Ge: return lhs >= rhs;
        case Rel::Gt: return lhs > rhs;
    }
    return false;
}

void require_plain(const Model& m) {
    if (m.is_parametric()) throw std::invalid_argument("the oracle needs a parameter-free model");
}

template <typename Vals>
bool holds(const Constraint& c, const Vals& vals, const Rational& unit) {
    return std::all_of(c.conjuncts.begin(), c.conjuncts.end(), [&](const AtomicConstraint& a) {
        return compare(Rational(vals[a.clock]), a.rel, a.constant * unit);
    });
}

struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
        return h;
    }
};

}  // namespace

SampleReport digitized_durations(const Model& m, std::int64_t q, const Rational& horizon,
                                 std::optional<std::size_t> max_steps, std::optional<DeltaBound> delta) {
    require_plain(m);
    if (q <= 0) throw std::invalid_argument("granularity must be positive");
    if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");

    const Rational unit(q);  // constants in ticks
    const std::int64_t last = to_int64(floor_div(horizon * unit));
    const std::size_t nc = m.clocks.size();

    // Values above every constant a clock is compared with are interchangeable.
    std::vector<std::int64_t> cap(nc, 0);
    auto note = [&](const Constraint& c) {
        for (const auto& a : c.conjuncts) cap[a.clock] = std::max(cap[a.clock], to_int64(ceil_div(a.constant * unit)));
    };
    for (const auto& inv : m.invariants) note(inv);
    for (const auto& e : m.edges) note(e.guard);

    const bool finite_delta = delta && !delta->is_infinite();
    const std::int64_t age_cap = finite_delta ? to_int64(floor_div(delta->value() * unit)) + 1 : 0;

    std::vector<std::vector<std::size_t>> out_edges(m.locations.size());
    for (std::size_t i = 0; i < m.edges.size(); ++i) out_edges[m.edges[i].source].push_back(i);

    SampleReport report;
    report.granularity = q;
    report.horizon = horizon;
    report.delta = delta;
    const auto n_points = static_cast<std::size_t>(last + 1);
    report.d_visit.assign(n_points, false);
    report.d_avoid.assign(n_points, false);
    if (delta) {
        report.d_secret.assign(n_points, false);
        report.d_late.assign(n_points, false);
    }

    // key: loc, flag, elapsed, age (-1: never entered), clocks...
    struct Item {
        std::vector<std::int64_t> key;
        std::size_t steps;
    };
    const std::size_t budget = state_budget();
    std::unordered_set<std::vector<std::int64_t>, KeyHash> seen;
    std::deque<Item> queue;
    auto push = [&](std::vector<std::int64_t> key, std::size_t steps) {
        if (!seen.insert(key).second) return;
        if (seen.size() > budget)
            throw BudgetExceeded("oracle enumeration exceeded the state budget of " + std::to_string(budget));
        queue.push_back({std::move(key), steps});
    };

    std::vector<std::int64_t> start(4 + nc, 0);
    start[0] = static_cast<std::int64_t>(m.init);
    start[3] = -1;
    auto clocks_of = [&](const std::vector<std::int64_t>& key) { return key.data() + 4; };
    if (holds(m.invariants[m.init], clocks_of(start), unit)) push(start, 0);

    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();
        const auto& key = item.key;
        const auto loc = static_cast<LocId>(key[0]);
        const bool flag = key[1] != 0;
        const std::int64_t elapsed = key[2];
        const std::int64_t age = key[3];

        if (loc == m.final) {
            const auto k = static_cast<std::size_t>(elapsed);
            (flag ? report.d_visit : report.d_avoid)[k] = true;
            if (delta && flag) {
                bool secret = !finite_delta || Rational(age) <= delta->value() * unit;
                (secret ? report.d_secret : report.d_late)[k] = true;
            }
            continue;
        }

        if (!max_steps || item.steps < *max_steps) {
            for (std::size_t ei : out_edges[loc]) {
                const Edge& e = m.edges[ei];
                if (!holds(e.guard, clocks_of(key), unit)) continue;
                std::vector<std::int64_t> next = key;
                for (ClockId x : e.resets) next[4 + x] = 0;
                if (!holds(m.invariants[e.target], clocks_of(next), unit)) continue;
                next[0] = static_cast<std::int64_t>(e.target);
                if (e.target == m.priv) {
                    next[1] = 1;
                    next[3] = 0;
                }
                push(std::move(next), item.steps + 1);
            }
        }

        if (elapsed < last) {
            std::vector<std::int64_t> next = key;
            next[2] += 1;
            if (next[3] >= 0) next[3] = std::min(next[3] + 1, age_cap);
            for (std::size_t x = 0; x < nc; ++x) next[4 + x] = std::min(next[4 + x] + 1, cap[x] + 1);
            // Invariants are convex: holding at both ends covers the whole delay.
            if (holds(m.invariants[loc], clocks_of(next), unit)) push(std::move(next), item.steps);
        }
    }
    report.states = seen.size();
    return report;
}

bool RunSample::is_secret(const DeltaBound& delta) const {
    if (!visited_private) return false;
    if (delta.is_infinite()) return true;
    return duration - *last_private_entry <= delta.value();
}

namespace {

struct Concrete {
    LocId loc = 0;
    std::vector<Rational> vals;
    Rational now = 0;
    bool flag = false;
    std::optional<Rational> entry;
};

std::vector<Rational> delayed(const std::vector<Rational>& vals, const Rational& d) {
    std::vector<Rational> out = vals;
    for (auto& v : out) v += d;
    return out;
}

// Fires e after delay d if admissible.
bool fire(const Model& m, Concrete& s, const Rational& d, const Edge& e) {
    if (d < 0 || e.source != s.loc) return false;
    std::vector<Rational> after = delayed(s.vals, d);
    if (!holds(m.invariants[s.loc], after, Rational(1))) return false;
    if (!holds(e.guard, after, Rational(1))) return false;
    for (ClockId x : e.resets) after[x] = 0;
    if (!holds(m.invariants[e.target], after, Rational(1))) return false;
    s.vals = std::move(after);
    s.now += d;
    s.loc = e.target;
    if (e.target == m.priv) {
        s.flag = true;
        s.entry = s.now;
    }
    return true;
}

Concrete initial_state(const Model& m) {
    Concrete s;
    s.loc = m.init;
    s.vals.assign(m.clocks.size(), Rational(0));
    return s;
}

RunSample sample_of(const Concrete& s) { return {s.now, s.flag, s.entry}; }

}  // namespace

RunSample replay_run(const Model& m, const std::vector<ScriptStep>& steps) {
    require_plain(m);
    Concrete s = initial_state(m);
    if (!holds(m.invariants[m.init], s.vals, Rational(1))) throw std::invalid_argument("initial invariant violated");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (s.loc == m.final) throw std::invalid_argument("run continues past the final location");
        if (steps[i].edge >= m.edges.size()) throw std::invalid_argument("no such edge");
        if (!fire(m, s, steps[i].delay, m.edges[steps[i].edge]))
            throw std::invalid_argument("step " + std::to_string(i + 1) + " is not admissible");
    }
    if (s.loc != m.final) throw std::invalid_argument("run does not reach the final location");
    return sample_of(s);
}

std::vector<RunSample> random_runs(const Model& m, std::size_t n, std::uint64_t seed) {
    require_plain(m);
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };

    std::vector<std::vector<std::size_t>> out_edges(m.locations.size());
    for (std::size_t i = 0; i < m.edges.size(); ++i) out_edges[m.edges[i].source].push_back(i);

    std::vector<RunSample> out;
    const std::size_t max_attempts = 20 * n;
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < n; ++attempt) {
        Concrete s = initial_state(m);
        if (!holds(m.invariants[m.init], s.vals, Rational(1))) break;
        for (int step = 0; step < 32 && s.loc != m.final; ++step) {
            // Delays that land some clock exactly on a constant, plus random ones.
            std::vector<Rational> delays{Rational(0)};
            auto collect = [&](const Constraint& c) {
                for (const auto& a : c.conjuncts)
                    if (a.constant > s.vals[a.clock]) delays.push_back(a.constant - s.vals[a.clock]);
            };
            collect(m.invariants[s.loc]);
            for (std::size_t ei : out_edges[s.loc]) collect(m.edges[ei].guard);
            for (int r = 0; r < 4; ++r) {
                auto den = static_cast<std::int64_t>(1 + pick(8));
                auto num = static_cast<std::int64_t>(pick(static_cast<std::size_t>(4 * den) + 1));
                delays.emplace_back(num, den);
            }
            bool moved = false;
            for (int tries = 0; tries < 8 && !moved; ++tries) {
                Rational d = delays[pick(delays.size())];
                std::vector<std::size_t> enabled;
                for (std::size_t ei : out_edges[s.loc]) {
                    Concrete probe = s;
                    if (fire(m, probe, d, m.edges[ei])) enabled.push_back(ei);
                }
                if (enabled.empty()) continue;
                moved = fire(m, s, d, m.edges[enabled[pick(enabled.size())]]);
            }
            if (!moved) break;
        }
        if (s.loc == m.final) out.push_back(sample_of(s));
    }
    return out;
}

bool has_strict_constraints(const Model& m) {
    auto strict = [](const Constraint& c) {
        return std::any_of(c.conjuncts.begin(), c.conjuncts.end(),
                           [](const AtomicConstraint& a) { return a.rel == Rel::Lt || a.rel == Rel::Gt; });
    };
    return std::any_of(m.invariants.begin(), m.invariants.end(), strict) ||
           std::any_of(m.edges.begin(), m.edges.end(), [&](const Edge& e) { return strict(e.guard); });
}

Rational crosscheck_horizon(const DurationReport& sets) {
    std::vector<const DurationSet*> all{&sets.d_visit, &sets.d_avoid};
    if (sets.d_secret) all.push_back(&*sets.d_secret);
    if (sets.d_late) all.push_back(&*sets.d_late);
    Rational horizon = 0;
    for (const auto* s : all) {
        Rational h = s->horizon() + Rational(2 * s->period().value_or(0));
        horizon = std::max(horizon, Rational(h / s->scale()));
    }
    return horizon + 1;
}

std::vector<Disagreement> crosscheck(const SampleReport& report, const DurationReport& sets, bool soundness_only) {
    std::vector<Disagreement> out;
    auto check = [&](const char* name, const std::vector<bool>& grid, const DurationSet& set) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Rational d = report.point(k);
            const bool symbolic = set.contains(d);
            if (grid[k] == symbolic) continue;
            if (soundness_only && !grid[k]) continue;
            out.push_back({d, name, grid[k], symbolic});
        }
    };
    check("d_visit", report.d_visit, sets.d_visit);
    check("d_avoid", report.d_avoid, sets.d_avoid);
    if (report.delta && sets.delta) {
        if (!(*report.delta == *sets.delta)) throw std::invalid_argument("oracle and symbolic bounds differ");
        check("d_secret", report.d_secret, *sets.d_secret);
        check("d_late", report.d_late, *sets.d_late);
    }
    return out;
}

std::vector<Disagreement> crosscheck(const std::vector<RunSample>& samples, const DurationReport& sets) {
    std::vector<Disagreement> out;
    auto expect = [&](const char* name, const Rational& d, const DurationSet& set) {
        if (!set.contains(d)) out.push_back({d, name, true, false});
    };
    for (const auto& s : samples) {
        expect(s.visited_private ? "d_visit" : "d_avoid", s.duration, s.visited_private ? sets.d_visit : sets.d_avoid);
        if (sets.delta && s.visited_private) {
            bool secret = s.is_secret(*sets.delta);
            expect(secret ? "d_secret" : "d_late", s.duration, secret ? *sets.d_secret : *sets.d_late);
        }
    }
    return out;
}

nlohmann::ordered_json to_json(const SampleReport& r) {
    nlohmann::ordered_json j;
    j["granularity"] = r.granularity;
    j["horizon"] = to_string(r.horizon);
    if (r.delta) j["delta"] = r.delta->to_string();
    auto members = [&](const std::vector<bool>& grid) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < grid.size(); ++k)
            if (grid[k]) a.push_back(to_string(r.point(k)));
        return a;
    };
    j["d_visit"] = members(r.d_visit);
    j["d_avoid"] = members(r.d_avoid);
    if (r.delta) {
        j["d_secret"] = members(r.d_secret);
        j["d_late"] = members(r.d_late);
    }
    j["states"] = r.states;
    return j;
}

nlohmann::ordered_json to_json(const RunSample& s) {
    nlohmann::ordered_json j;
    j["duration"] = to_string(s.duration);
    j["private"] = s.visited_private;
    j["last_private_entry"] = s.last_private_entry ? nlohmann::ordered_json(to_string(*s.last_private_entry))
                                                   : nlohmann::ordered_json(nullptr);
    return j;
}

nlohmann::ordered_json to_json(const Disagreement& d) {
    nlohmann::ordered_json j;
    j["duration"] = to_string(d.duration);
    j["set"] = d.set;
    j["oracle"] = d.oracle;
    j["symbolic"] = d.symbolic;
    return j;
}

}  // namespace opaq
