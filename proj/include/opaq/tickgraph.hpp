#pragma once

// Observer construction and region-graph exploration into a unary "tick"
// automaton. The observer adds a clock t with invariant t <= 1 and a tick
// self-loop at t == 1, so the number of ticks on a path counts whole time
// units and t's region at the end pins the remaining fraction. A flag
// (location duplication) records whether the private location was visited,
// and in expiring mode a clock y measures time since the last private entry.

#include "opaq/intset.hpp"
#include "opaq/model.hpp"
#include "opaq/region.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace opaq {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads OPAQ_STATE_BUDGET, falling back to `fallback`.
std::size_t state_budget(std::size_t fallback = 5'000'000);

struct Observer {
    Model model;                        // parameter-free, integer constants
    LocId final_source = 0;             // final location of the source model
    ClockId tick_clock = 0;
    std::optional<ClockId> expiry_clock;
    std::optional<DeltaBound> expiry;   // set in expiring mode (may be infinite)
    std::vector<bool> is_tick_edge;     // parallel to model.edges

    [[nodiscard]] LocId location(LocId source, bool flag) const { return 2 * source + (flag ? 1 : 0); }
    [[nodiscard]] LocId source_of(LocId obs) const { return obs / 2; }
    [[nodiscard]] bool flag_of(LocId obs) const { return obs % 2 == 1; }
    [[nodiscard]] bool is_final(LocId obs) const { return source_of(obs) == final_source; }
};

// `expiring` empty: plain mode. Otherwise the (already rescaled) expiration bound.
Observer build_observer(const Model& m, std::optional<DeltaBound> expiring = std::nullopt);

enum class RunClass : std::uint8_t { Private, Public, Secret, Late };

std::string_view to_string(RunClass c);

struct Annotation {
    RunClass run = RunClass::Public;
    FracClass frac = FracClass::Zero;

    friend bool operator==(const Annotation&, const Annotation&) = default;
    friend auto operator<=>(const Annotation&, const Annotation&) = default;
};

enum class Letter : std::uint8_t { Epsilon, Tick };

struct SymbolicState {
    LocId location = 0;  // observer location
    bool flag = false;
    Region region;
};

struct TickNfa {
    std::vector<SymbolicState> states;  // states[0] is initial (when non-empty)
    std::vector<std::vector<std::pair<Letter, std::size_t>>> successors;
    std::map<std::size_t, std::vector<Annotation>> accepting;
    std::vector<std::int64_t> caps;
};

TickNfa explore(const Observer& o);

// {k : some path with k ticks reaches `state`}.
EventuallyPeriodicIntSet tick_counts(const TickNfa& nfa, std::size_t state);

// Union of tick_counts over the accepting states carrying each annotation.
std::map<Annotation, EventuallyPeriodicIntSet> accepted_counts(const TickNfa& nfa);

// One line per transition, for debugging.
std::string dump_region_graph(const TickNfa& nfa, const Observer& o);

}  // namespace opaq
