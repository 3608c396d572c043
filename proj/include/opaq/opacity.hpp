#pragma once

// Execution-time opacity on parameter-free models. Every decision problem is
// answered from the exact duration sets of private, public and (for the
// expiring variants) secret and late runs.

#include "opaq/durset.hpp"
#include "opaq/model.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace opaq {

struct DurationReport {
    std::int64_t scale = 1;
    DurationSet d_visit;  // private runs
    DurationSet d_avoid;  // public runs
    std::optional<DeltaBound> delta;
    std::optional<DurationSet> d_secret;  // private, last private entry at most delta before the end
    std::optional<DurationSet> d_late;    // private, last private entry more than delta before the end
};

// Throws std::invalid_argument if `m` still has parameters.
DurationReport duration_report(const Model& m, std::optional<DeltaBound> delta = std::nullopt);

enum class Problem : std::uint8_t { Exists, Weak, Full, ExistsExp, WeakExp, FullExp };

std::string_view to_string(Problem p);
Problem parse_problem(std::string_view name, bool expiring);

struct Verdict {
    Problem problem = Problem::Exists;
    std::optional<DeltaBound> delta;
    bool answer = false;
    // Exists: a common duration when true. Weak/full: a separating duration when false.
    std::optional<Rational> witness;
};

// Answers `problem` from an already computed report (expiring problems need a report with delta).
Verdict decide(const DurationReport& report, Problem problem);

Verdict decide_exists(const Model& m);
Verdict decide_weak(const Model& m);
Verdict decide_full(const Model& m);
Verdict decide_exists_exp(const Model& m, const DeltaBound& delta);
Verdict decide_weak_exp(const Model& m, const DeltaBound& delta);
Verdict decide_full_exp(const Model& m, const DeltaBound& delta);

// Largest set of execution times for which the model is opaque.
DurationSet compute_opaque_times(const Model& m);

enum class SweepMode : std::uint8_t { Weak, Full };

struct SweepPoint {
    DeltaBound delta;
    bool answer = false;
};

// Samples the expiring decision at 0, step, 2·step, ..., max and +inf.
// A sample, not an exact answer to which bounds make the model opaque.
std::vector<SweepPoint> sweep_delta(const Model& m, const Rational& max, const Rational& step, SweepMode mode);

nlohmann::ordered_json to_json(const Verdict& v);
nlohmann::ordered_json to_json(const DurationReport& r);

}  // namespace opaq
