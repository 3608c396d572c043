#include "opaq/opacity.hpp"

#include "opaq/tickgraph.hpp"

#include <stdexcept>

namespace opaq {

DurationReport duration_report(const Model& m, std::optional<DeltaBound> delta) {
    if (m.is_parametric()) {
        std::string names;
        for (const auto& p : m.params) names += (names.empty() ? "" : ", ") + p;
        throw std::invalid_argument("model has unbound parameters: " + names);
    }
    RescaledModel r = rescale_to_integers(m, delta.value_or(DeltaBound::infinity()));
    Observer obs = build_observer(r.model, delta ? std::optional<DeltaBound>(r.delta) : std::nullopt);
    TickNfa nfa = explore(obs);
    auto counts = accepted_counts(nfa);

    auto collect = [&](RunClass run) {
        std::vector<std::pair<FracClass, EventuallyPeriodicIntSet>> entries;
        for (const auto& [note, set] : counts)
            if (note.run == run) entries.emplace_back(note.frac, set);
        return DurationSet::from_annotations(entries, r.scale);
    };

    DurationReport report;
    report.scale = r.scale;
    report.d_visit = collect(RunClass::Private);
    report.d_avoid = collect(RunClass::Public);
    if (delta) {
        report.delta = delta;
        report.d_secret = collect(RunClass::Secret);
        report.d_late = collect(RunClass::Late);
    }
    return report;
}

std::string_view to_string(Problem p) {
    switch (p) {
        case Problem::Exists: return "exists";
        case Problem::Weak: return "weak";
        case Problem::Full: return "full";
        case Problem::ExistsExp: return "exists_exp";
        case Problem::WeakExp: return "weak_exp";
        case Problem::FullExp: return "full_exp";
    }
    return "?";
}

Problem parse_problem(std::string_view name, bool expiring) {
    if (name == "exists") return expiring ? Problem::ExistsExp : Problem::Exists;
    if (name == "weak") return expiring ? Problem::WeakExp : Problem::Weak;
    if (name == "full") return expiring ? Problem::FullExp : Problem::Full;
    throw std::invalid_argument("unknown problem '" + std::string(name) + "' (expected exists, weak or full)");
}

Verdict decide(const DurationReport& report, Problem problem) {
    const bool expiring = problem == Problem::ExistsExp || problem == Problem::WeakExp || problem == Problem::FullExp;
    if (expiring && !report.delta) throw std::invalid_argument("expiring problems need an expiration bound");

    // Left side: what the attacker must not single out; right side: the cover.
    const DurationSet& secret = expiring ? *report.d_secret : report.d_visit;
    const DurationSet cover = expiring ? set_union(*report.d_late, report.d_avoid) : report.d_avoid;

    Verdict v;
    v.problem = problem;
    if (expiring) v.delta = report.delta;
    switch (problem) {
        case Problem::Exists:
        case Problem::ExistsExp: {
            DurationSet common = set_intersection(secret, cover);
            v.answer = !common.is_empty();
            v.witness = common.witness();
            break;
        }
        case Problem::Weak:
        case Problem::WeakExp: {
            DurationSet exposed = set_difference(secret, cover);
            v.answer = exposed.is_empty();
            v.witness = exposed.witness();
            break;
        }
        case Problem::Full:
        case Problem::FullExp: {
            DurationSet diff = set_union(set_difference(secret, cover), set_difference(cover, secret));
            v.answer = diff.is_empty();
            v.witness = diff.witness();
            break;
        }
    }
    return v;
}

Verdict decide_exists(const Model& m) { return decide(duration_report(m), Problem::Exists); }
Verdict decide_weak(const Model& m) { return decide(duration_report(m), Problem::Weak); }
Verdict decide_full(const Model& m) { return decide(duration_report(m), Problem::Full); }

Verdict decide_exists_exp(const Model& m, const DeltaBound& delta) {
    return decide(duration_report(m, delta), Problem::ExistsExp);
}
Verdict decide_weak_exp(const Model& m, const DeltaBound& delta) {
    return decide(duration_report(m, delta), Problem::WeakExp);
}
Verdict decide_full_exp(const Model& m, const DeltaBound& delta) {
    return decide(duration_report(m, delta), Problem::FullExp);
}

DurationSet compute_opaque_times(const Model& m) {
    DurationReport r = duration_report(m);
    return set_intersection(r.d_visit, r.d_avoid);
}

std::vector<SweepPoint> sweep_delta(const Model& m, const Rational& max, const Rational& step, SweepMode mode) {
    if (step <= 0) throw std::invalid_argument("sweep step must be positive");
    if (max < 0) throw std::invalid_argument("sweep maximum must be non-negative");
    const Problem problem = mode == SweepMode::Weak ? Problem::WeakExp : Problem::FullExp;
    std::vector<SweepPoint> out;
    for (Rational d = 0; d <= max; d += step) {
        DeltaBound delta(d);
        out.push_back({delta, decide(duration_report(m, delta), problem).answer});
    }
    out.push_back({DeltaBound::infinity(), decide(duration_report(m, DeltaBound::infinity()), problem).answer});
    return out;
}

nlohmann::ordered_json to_json(const Verdict& v) {
    nlohmann::ordered_json j;
    j["problem"] = std::string(to_string(v.problem));
    if (v.delta) j["delta"] = v.delta->to_string();
    j["answer"] = v.answer;
    j["witness"] = v.witness ? nlohmann::ordered_json(to_string(*v.witness)) : nlohmann::ordered_json(nullptr);
    return j;
}

nlohmann::ordered_json to_json(const DurationReport& r) {
    nlohmann::ordered_json j;
    j["scale"] = r.scale;
    j["d_visit"] = to_json(r.d_visit);
    j["d_avoid"] = to_json(r.d_avoid);
    if (r.delta) {
        j["delta"] = r.delta->to_string();
        j["d_secret"] = to_json(*r.d_secret);
        j["d_late"] = to_json(*r.d_late);
    }
    return j;
}

}  // namespace opaq
