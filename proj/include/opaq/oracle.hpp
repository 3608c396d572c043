#pragma once

// Brute-force ground truth over the concrete timed semantics: exhaustive
// enumeration of runs whose delays lie on a 1/q grid, random simulation,
// scripted replay, and comparison against the symbolic duration sets.
// Deliberately shares nothing with the region/tick machinery.

#include "opaq/model.hpp"
#include "opaq/opacity.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace opaq {

struct SampleReport {
    std::int64_t granularity = 1;  // q: delays are multiples of 1/q
    Rational horizon;
    std::optional<DeltaBound> delta;
    // Index k stands for duration k/q.
    std::vector<bool> d_visit;
    std::vector<bool> d_avoid;
    std::vector<bool> d_secret;  // empty without delta
    std::vector<bool> d_late;
    std::size_t states = 0;

    [[nodiscard]] Rational point(std::size_t k) const { return Rational(static_cast<std::int64_t>(k), granularity); }
};

// Exhaustive at granularity 1/q up to `horizon`; `max_steps` bounds the
// discrete transitions of a run. Throws BudgetExceeded past the state budget.
SampleReport digitized_durations(const Model& m, std::int64_t q, const Rational& horizon,
                                 std::optional<std::size_t> max_steps = std::nullopt,
                                 std::optional<DeltaBound> delta = std::nullopt);

struct RunSample {
    Rational duration;
    bool visited_private = false;
    std::optional<Rational> last_private_entry;

    // Secret w.r.t. `delta`: private entry at most delta before the end.
    [[nodiscard]] bool is_secret(const DeltaBound& delta) const;
};

// Delay, then take `edge` (index into m.edges).
struct ScriptStep {
    Rational delay;
    std::size_t edge = 0;
};

// Throws std::invalid_argument if a step is not admissible or the run does not end in the final location.
RunSample replay_run(const Model& m, const std::vector<ScriptStep>& steps);

// Up to n runs that reach the final location; identical for identical seeds.
std::vector<RunSample> random_runs(const Model& m, std::size_t n, std::uint64_t seed);

// Whether any guard or invariant uses < or >.
bool has_strict_constraints(const Model& m);

struct Disagreement {
    Rational duration;
    std::string set;  // d_visit, d_avoid, d_secret, d_late
    bool oracle = false;
    bool symbolic = false;
};

// Past every feature of every set in `sets` plus two periods and one unit (real units).
Rational crosscheck_horizon(const DurationReport& sets);

// Grid membership per oracle vs the symbolic sets. With `soundness_only`,
// a point the oracle misses is not reported.
std::vector<Disagreement> crosscheck(const SampleReport& report, const DurationReport& sets, bool soundness_only);
// Every sample must belong to its sets.
std::vector<Disagreement> crosscheck(const std::vector<RunSample>& samples, const DurationReport& sets);

nlohmann::ordered_json to_json(const SampleReport& r);
nlohmann::ordered_json to_json(const RunSample& s);
nlohmann::ordered_json to_json(const Disagreement& d);

}  // namespace opaq
