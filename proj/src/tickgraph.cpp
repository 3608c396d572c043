#include "opaq/tickgraph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace opaq {

std::size_t state_budget(std::size_t fallback) {
    if (const char* env = std::getenv("OPAQ_STATE_BUDGET")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw std::invalid_argument("OPAQ_STATE_BUDGET must be a positive integer");
        }
    }
    return fallback;
}

std::string_view to_string(RunClass c) {
    switch (c) {
        case RunClass::Private: return "private";
        case RunClass::Public: return "public";
        case RunClass::Secret: return "secret";
        case RunClass::Late: return "late";
    }
    return "?";
}

Observer build_observer(const Model& m, std::optional<DeltaBound> expiring) {
    if (m.is_parametric()) throw std::invalid_argument("observer requires a parameter-free model");

    Observer o;
    o.final_source = m.final;
    o.expiry = expiring;
    Model& om = o.model;
    om.clocks = m.clocks;
    const std::string tick_name = m.fresh_name("t");
    o.tick_clock = om.clocks.size();
    om.clocks.push_back(tick_name);
    if (expiring && !expiring->is_infinite()) {
        if (!is_integer(expiring->value())) throw std::invalid_argument("expiration bound must be rescaled first");
        Model probe = m;
        probe.clocks.push_back(tick_name);
        o.expiry_clock = om.clocks.size();
        om.clocks.push_back(probe.fresh_name("y"));
    }

    for (LocId l = 0; l < m.locations.size(); ++l) {
        for (int b = 0; b < 2; ++b) {
            om.locations.push_back(m.locations[l] + "#" + std::to_string(b));
            Constraint inv = m.invariants[l];
            inv.conjuncts.push_back({o.tick_clock, Rel::Le, {}, Rational(1)});
            om.invariants.push_back(std::move(inv));
        }
    }
    om.init = o.location(m.init, false);
    om.priv = o.location(m.priv, true);
    om.final = o.location(m.final, true);

    for (const auto& e : m.edges) {
        if (e.source == m.final) continue;  // first entry into the final location ends the run
        for (bool flag : {false, true}) {
            Edge oe = e;
            bool enters_private = e.target == m.priv;
            oe.source = o.location(e.source, flag);
            oe.target = o.location(e.target, flag || enters_private);
            if (enters_private && o.expiry_clock) {
                oe.resets.push_back(*o.expiry_clock);
                std::sort(oe.resets.begin(), oe.resets.end());
            }
            om.edges.push_back(std::move(oe));
            o.is_tick_edge.push_back(false);
        }
    }
    for (LocId l = 0; l < m.locations.size(); ++l) {
        if (l == m.final) continue;
        for (bool flag : {false, true}) {
            Edge tick;
            tick.source = tick.target = o.location(l, flag);
            tick.guard.conjuncts.push_back({o.tick_clock, Rel::Eq, {}, Rational(1)});
            tick.action = "tick";
            tick.resets = {o.tick_clock};
            om.edges.push_back(std::move(tick));
            o.is_tick_edge.push_back(true);
        }
    }
    return o;
}

namespace {

struct StateKey {
    LocId location;
    Region region;
    friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const noexcept {
        return RegionHash{}(k.region) * 31 + std::hash<LocId>{}(k.location);
    }
};

}  // namespace

TickNfa explore(const Observer& o) {
    const Model& om = o.model;
    TickNfa nfa;
    nfa.caps = max_constants(om, o.expiry.value_or(DeltaBound::infinity()), o.expiry_clock);
    RegionSpace space(nfa.caps);
    const std::size_t budget = state_budget();

    std::vector<std::vector<std::size_t>> out_edges(om.locations.size());
    for (std::size_t i = 0; i < om.edges.size(); ++i) out_edges[om.edges[i].source].push_back(i);

    std::unordered_map<StateKey, std::size_t, StateKeyHash> index;
    std::deque<std::size_t> queue;

    auto annotate = [&](std::size_t id) {
        const SymbolicState& s = nfa.states[id];
        FracClass frac = space.t_class(s.region, o.tick_clock);
        std::vector<Annotation> notes;
        if (!s.flag) {
            notes.push_back({RunClass::Public, frac});
        } else {
            notes.push_back({RunClass::Private, frac});
            if (o.expiry) {
                bool secret = true;
                if (o.expiry_clock) {
                    AtomicConstraint within{*o.expiry_clock, Rel::Le, {}, o.expiry->value()};
                    secret = space.satisfies(s.region, within);
                }
                notes.push_back({secret ? RunClass::Secret : RunClass::Late, frac});
            }
        }
        nfa.accepting.emplace(id, std::move(notes));
    };

    auto intern = [&](LocId loc, Region r) -> std::size_t {
        StateKey key{loc, std::move(r)};
        if (auto it = index.find(key); it != index.end()) return it->second;
        if (nfa.states.size() >= budget)
            throw BudgetExceeded("region exploration exceeded the state budget of " + std::to_string(budget));
        std::size_t id = nfa.states.size();
        nfa.states.push_back({key.location, o.flag_of(key.location), key.region});
        nfa.successors.emplace_back();
        index.emplace(std::move(key), id);
        if (o.is_final(loc)) annotate(id);
        else queue.push_back(id);
        return id;
    };

    Region start = space.initial();
    if (!space.satisfies(start, om.invariants[om.init])) return nfa;
    intern(om.init, start);

    while (!queue.empty()) {
        std::size_t id = queue.front();
        queue.pop_front();
        const LocId loc = nfa.states[id].location;
        const Region region = nfa.states[id].region;

        if (!space.is_maximal(region)) {
            Region next = space.delay_successor(region);
            if (space.satisfies(next, om.invariants[loc])) {
                std::size_t to = intern(loc, std::move(next));
                nfa.successors[id].emplace_back(Letter::Epsilon, to);
            }
        }
        for (std::size_t ei : out_edges[loc]) {
            const Edge& e = om.edges[ei];
            auto next = space.discrete_successor(region, e.guard, e.resets);
            if (!next || !space.satisfies(*next, om.invariants[e.target])) continue;
            std::size_t to = intern(e.target, std::move(*next));
            nfa.successors[id].emplace_back(o.is_tick_edge[ei] ? Letter::Tick : Letter::Epsilon, to);
        }
    }
    return nfa;
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto w : b) h = (h ^ w) * 1099511628211ULL;
        return h;
    }
};

bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }
void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

// Sets S_k of states reachable with exactly k ticks, up to the first repeat:
// S_k == S_loop_start for k == sets.size().
struct SubsetLasso {
    std::vector<Bits> sets;
    std::size_t loop_start = 0;
};

SubsetLasso subset_lasso(const TickNfa& nfa) {
    const std::size_t n = nfa.states.size();
    const std::size_t words = (n + 63) / 64;
    SubsetLasso lasso;
    if (n == 0) {
        lasso.sets.emplace_back();
        return lasso;
    }

    std::vector<std::size_t> stack;
    auto close = [&](Bits& s) {
        stack.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (test(s, i)) stack.push_back(i);
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (auto [letter, v] : nfa.successors[u]) {
                if (letter == Letter::Epsilon && !test(s, v)) {
                    set(s, v);
                    stack.push_back(v);
                }
            }
        }
    };

    const std::size_t budget = state_budget();
    std::unordered_map<Bits, std::size_t, BitsHash> seen;
    Bits current(words, 0);
    set(current, 0);
    close(current);
    while (true) {
        if (auto it = seen.find(current); it != seen.end()) {
            lasso.loop_start = it->second;
            return lasso;
        }
        if (lasso.sets.size() * std::max<std::size_t>(words, 1) >= budget)
            throw BudgetExceeded("tick-count extraction exceeded the state budget");
        seen.emplace(current, lasso.sets.size());
        lasso.sets.push_back(current);
        Bits next(words, 0);
        for (std::size_t u = 0; u < n; ++u) {
            if (!test(current, u)) continue;
            for (auto [letter, v] : nfa.successors[u])
                if (letter == Letter::Tick) set(next, v);
        }
        close(next);
        current = std::move(next);
    }
}

}  // namespace

EventuallyPeriodicIntSet tick_counts(const TickNfa& nfa, std::size_t state) {
    if (state >= nfa.states.size()) return {};
    SubsetLasso lasso = subset_lasso(nfa);
    std::vector<bool> bits;
    for (const auto& s : lasso.sets) bits.push_back(test(s, state));
    return EventuallyPeriodicIntSet::from_lasso(bits, lasso.loop_start);
}

std::map<Annotation, EventuallyPeriodicIntSet> accepted_counts(const TickNfa& nfa) {
    std::map<Annotation, EventuallyPeriodicIntSet> out;
    if (nfa.accepting.empty()) return out;
    SubsetLasso lasso = subset_lasso(nfa);
    std::map<Annotation, std::vector<bool>> bits;
    for (const auto& [state, notes] : nfa.accepting)
        for (const auto& a : notes) bits.try_emplace(a, lasso.sets.size(), false);
    for (std::size_t k = 0; k < lasso.sets.size(); ++k)
        for (const auto& [state, notes] : nfa.accepting)
            if (test(lasso.sets[k], state))
                for (const auto& a : notes) bits[a][k] = true;
    for (const auto& [a, b] : bits) {
        auto set = EventuallyPeriodicIntSet::from_lasso(b, lasso.loop_start);
        if (!set.empty()) out.emplace(a, std::move(set));
    }
    return out;
}

std::string dump_region_graph(const TickNfa& nfa, const Observer& o) {
    RegionSpace space(nfa.caps);
    auto label = [&](std::size_t i) {
        const auto& s = nfa.states[i];
        return "s" + std::to_string(i) + "[" + o.model.locations[s.location] + " | " +
               space.describe(s.region, o.model.clocks) + "]";
    };
    std::ostringstream out;
    for (std::size_t i = 0; i < nfa.states.size(); ++i) {
        for (auto [letter, j] : nfa.successors[i])
            out << label(i) << (letter == Letter::Tick ? " -tick-> " : " -eps-> ") << label(j) << '\n';
        if (auto it = nfa.accepting.find(i); it != nfa.accepting.end()) {
            out << label(i) << " accepts";
            for (const auto& a : it->second) out << ' ' << to_string(a.run) << '/' << to_string(a.frac);
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace opaq
