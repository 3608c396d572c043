#include "opaq/cli.hpp"

#include "opaq/opacity.hpp"
#include "opaq/oracle.hpp"
#include "opaq/polyparam.hpp"
#include "opaq/tickgraph.hpp"

#include <CLI11.hpp>

#include <sstream>

namespace opaq {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string model_path;
    std::string format = "text";
    std::vector<std::string> params;
    std::string delta;  // empty: none
    std::string problem;
    std::size_t depth = 200;
    bool dump_regions = false;
    std::string sweep_max;
    std::string sweep_step;
    std::string mode = "weak";
    std::int64_t granularity = 0;  // 0: twice the model scale
    std::string horizon;
    std::size_t max_steps = 0;  // 0: unbounded
    std::size_t runs = 200;
    std::uint64_t seed = 1;
};

using Json = nlohmann::ordered_json;

ParamValuation parse_bindings(const std::vector<std::string>& raw) {
    ParamValuation v;
    for (const auto& b : raw) {
        auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + b + "'");
        std::string name = b.substr(0, eq);
        if (v.count(name) != 0U) throw UsageError("parameter " + name + " bound twice");
        v[name] = parse_rational(b.substr(eq + 1));
    }
    return v;
}

// The model with every parameter bound.
Model instantiate(const Model& m, const Options& o) {
    ParamValuation v = parse_bindings(o.params);
    if (!m.is_parametric()) {
        if (!v.empty()) throw UsageError("--param given but the model has no parameters");
        return m;
    }
    std::string missing;
    for (const auto& p : m.params)
        if (v.count(p) == 0U) missing += (missing.empty() ? "" : ", ") + p;
    if (!missing.empty()) throw UsageError("unbound parameters: " + missing + " (use --param name=value)");
    return apply_valuation(m, v);
}

void no_bindings(const Options& o, const char* command) {
    if (!o.params.empty()) throw UsageError(std::string(command) + " does not take --param");
}

std::optional<DeltaBound> delta_of(const Options& o) {
    if (o.delta.empty()) return std::nullopt;
    return DeltaBound::parse(o.delta);
}

std::string grid_list(const SampleReport& r, const std::vector<bool>& grid) {
    std::string s;
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (grid[k]) s += (s.empty() ? "" : ", ") + to_string(r.point(k));
    return "{" + s + "}";
}

void render_report(std::ostream& out, const DurationReport& r) {
    out << "DVisit_priv = " << r.d_visit.to_string() << '\n';
    out << "DAvoid_priv = " << r.d_avoid.to_string() << '\n';
    if (r.delta) {
        out << "delta = " << r.delta->to_string() << '\n';
        out << "DSecret_priv = " << r.d_secret->to_string() << '\n';
        out << "DLate_priv = " << r.d_late->to_string() << '\n';
    }
}

std::string problem_label(const Verdict& v) {
    std::string s(to_string(v.problem));
    if (v.delta) s += " (delta = " + v.delta->to_string() + ")";
    return s;
}

int cmd_check(const Options& o, std::ostream& out) {
    if (o.problem.empty()) throw UsageError("check needs --problem exists|weak|full");
    Model m = instantiate(load_model(o.model_path), o);
    auto delta = delta_of(o);
    Problem p = parse_problem(o.problem, delta.has_value());
    Verdict v = decide(duration_report(m, delta), p);
    if (o.format == "json") {
        out << to_json(v).dump() << '\n';
        return 0;
    }
    out << problem_label(v) << ": " << (v.answer ? "opaque" : "not opaque") << '\n';
    if (v.witness) {
        const bool exists = p == Problem::Exists || p == Problem::ExistsExp;
        out << (exists ? "common duration: " : "distinguishing duration: ") << to_string(*v.witness) << '\n';
    }
    return 0;
}

int cmd_durations(const Options& o, std::ostream& out) {
    Model m = instantiate(load_model(o.model_path), o);
    auto delta = delta_of(o);
    DurationReport r = duration_report(m, delta);
    std::string regions;
    if (o.dump_regions) {
        RescaledModel rm = rescale_to_integers(m, delta.value_or(DeltaBound::infinity()));
        Observer obs = build_observer(rm.model, delta ? std::optional<DeltaBound>(rm.delta) : std::nullopt);
        regions = dump_region_graph(explore(obs), obs);
    }
    if (o.format == "json") {
        Json j = to_json(r);
        if (o.dump_regions) j["region_graph"] = regions;
        out << j.dump() << '\n';
        return 0;
    }
    if (o.dump_regions) out << regions;
    render_report(out, r);
    return 0;
}

int cmd_opaque_times(const Options& o, std::ostream& out) {
    Model m = instantiate(load_model(o.model_path), o);
    DurationSet t = compute_opaque_times(m);
    if (o.format == "json") {
        Json j;
        j["opaque_times"] = to_json(t);
        out << j.dump() << '\n';
        return 0;
    }
    out << "opaque times = " << t.to_string() << '\n';
    return 0;
}

int cmd_synth(const Options& o, std::ostream& out) {
    no_bindings(o, "synth-exists");
    Model m = load_model(o.model_path);
    SynthOptions so;
    so.depth_limit = o.depth;
    SynthResult r = synth_exists_opaque(m, so);
    if (o.format == "json") {
        Json j;
        j["constraint"] = to_json(r.constraint);
        j["complete"] = r.complete;
        j["states"] = r.states;
        out << j.dump() << '\n';
    } else {
        out << "constraint: " << to_string(r.constraint) << '\n';
        if (r.complete) out << "complete: exploration reached a fixpoint\n";
        else out << "UNDER-APPROXIMATION: exploration stopped (depth " << o.depth << "); more valuations may exist\n";
    }
    return r.complete ? 0 : 2;
}

int cmd_lu_classify(const Options& o, std::ostream& out) {
    no_bindings(o, "lu-classify");
    Model m = load_model(o.model_path);
    LuVerdict v = classify_lu(m);
    auto role = [](BoundRole r) { return r == BoundRole::Lower ? "lower" : "upper"; };
    if (o.format == "json") {
        Json j;
        j["is_lu"] = v.is_lu;
        if (v.is_lu) {
            Json roles = Json::object();
            for (std::size_t i = 0; i < m.params.size(); ++i) roles[m.params[i]] = role(v.roles[i]);
            j["roles"] = roles;
        } else {
            j["violation"] = {{"param", m.params[v.violation->param]},
                              {"where", v.violation->where},
                              {"atom", format_atom(m, v.violation->atom)}};
        }
        out << j.dump() << '\n';
        return 0;
    }
    if (!v.is_lu) {
        out << "not L/U: parameter " << m.params[v.violation->param] << " in " << v.violation->where << " ("
            << format_atom(m, v.violation->atom) << ")\n";
        return 0;
    }
    for (std::size_t i = 0; i < m.params.size(); ++i) out << m.params[i] << ": " << role(v.roles[i]) << '\n';
    return 0;
}

int cmd_lu_exists(const Options& o, std::ostream& out) {
    no_bindings(o, "lu-exists");
    bool nonempty = lu_exists_nonempty(load_model(o.model_path));
    if (o.format == "json") {
        Json j;
        j["nonempty"] = nonempty;
        out << j.dump() << '\n';
        return 0;
    }
    out << (nonempty ? "some parameter valuation makes the model exists-opaque\n"
                     : "no parameter valuation makes the model exists-opaque\n");
    return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    if (o.sweep_max.empty() || o.sweep_step.empty()) throw UsageError("sweep-delta needs --max and --step");
    Model m = instantiate(load_model(o.model_path), o);
    SweepMode mode = o.mode == "full" ? SweepMode::Full : SweepMode::Weak;
    auto points = sweep_delta(m, parse_rational(o.sweep_max), parse_rational(o.sweep_step), mode);
    if (o.format == "json") {
        Json j;
        j["mode"] = o.mode;
        Json samples = Json::array();
        for (const auto& p : points) samples.push_back({{"delta", p.delta.to_string()}, {"answer", p.answer}});
        j["samples"] = samples;
        j["exhaustive"] = false;
        out << j.dump() << '\n';
        return 0;
    }
    out << "WARNING: sampled bounds only, not an exhaustive answer\n";
    for (const auto& p : points)
        out << o.mode << "_exp (delta = " << p.delta.to_string() << "): " << (p.answer ? "opaque" : "not opaque")
            << '\n';
    return 0;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    if (o.granularity <= 0 || o.horizon.empty()) throw UsageError("oracle needs --granularity and --horizon");
    Model m = instantiate(load_model(o.model_path), o);
    auto r = digitized_durations(m, o.granularity, parse_rational(o.horizon),
                                 o.max_steps == 0 ? std::nullopt : std::optional<std::size_t>(o.max_steps),
                                 delta_of(o));
    if (o.format == "json") {
        out << to_json(r).dump() << '\n';
        return 0;
    }
    out << "grid 1/" << r.granularity << ", horizon " << to_string(r.horizon) << ", " << r.states << " states\n";
    out << "DVisit_priv (grid) = " << grid_list(r, r.d_visit) << '\n';
    out << "DAvoid_priv (grid) = " << grid_list(r, r.d_avoid) << '\n';
    if (r.delta) {
        out << "DSecret_priv (grid) = " << grid_list(r, r.d_secret) << '\n';
        out << "DLate_priv (grid) = " << grid_list(r, r.d_late) << '\n';
    }
    return 0;
}

int cmd_crosscheck(const Options& o, std::ostream& out) {
    Model m = instantiate(load_model(o.model_path), o);
    auto delta = delta_of(o);
    DurationReport sets = duration_report(m, delta);
    const std::int64_t q = o.granularity > 0 ? o.granularity : 2 * sets.scale;
    const Rational horizon = o.horizon.empty() ? crosscheck_horizon(sets) : parse_rational(o.horizon);
    const bool strict = has_strict_constraints(m);
    auto report = digitized_durations(m, q, horizon, std::nullopt, delta);
    auto grid = crosscheck(report, sets, strict);
    auto samples = random_runs(m, o.runs, o.seed);
    auto sampled = crosscheck(samples, sets);
    const bool ok = grid.empty() && sampled.empty();
    if (o.format == "json") {
        Json j;
        j["granularity"] = q;
        j["horizon"] = to_string(horizon);
        j["strict_constraints"] = strict;
        Json g = Json::array();
        for (const auto& d : grid) g.push_back(to_json(d));
        j["grid_disagreements"] = g;
        j["runs"] = samples.size();
        Json s = Json::array();
        for (const auto& d : sampled) s.push_back(to_json(d));
        j["run_disagreements"] = s;
        j["ok"] = ok;
        out << j.dump() << '\n';
        return 0;
    }
    out << "grid 1/" << q << " up to " << to_string(horizon)
        << (strict ? " (strict constraints: oracle-positive points only)" : "") << '\n';
    out << samples.size() << " random runs\n";
    for (const auto& d : grid)
        out << "grid disagreement: " << d.set << " at " << to_string(d.duration) << " oracle=" << d.oracle
            << " symbolic=" << d.symbolic << '\n';
    for (const auto& d : sampled) out << "run disagreement: " << d.set << " at " << to_string(d.duration) << '\n';
    out << (ok ? "agreement\n" : "DISAGREEMENT\n");
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Execution-time opacity analysis for (parametric) timed automata", "opaq"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("model", o.model_path, "Model file")->required();
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto with_params = [&](CLI::App* sub) {
        sub->add_option("--param", o.params, "Parameter binding name=value")->allow_extra_args(false);
    };
    auto with_delta = [&](CLI::App* sub) { sub->add_option("--delta", o.delta, "Expiration bound (rational or inf)"); };

    auto* check = app.add_subcommand("check", "Decide exists/weak/full opacity");
    common(check);
    with_params(check);
    with_delta(check);
    check->add_option("--problem", o.problem, "exists, weak or full")
        ->check(CLI::IsMember({"exists", "weak", "full"}))
        ->required();

    auto* durations = app.add_subcommand("durations", "Private and public duration sets");
    common(durations);
    with_params(durations);
    with_delta(durations);
    durations->add_flag("--dump-regions", o.dump_regions, "Also print the region graph");

    auto* opaque = app.add_subcommand("opaque-times", "Execution times for which the model is opaque");
    common(opaque);
    with_params(opaque);

    auto* synth = app.add_subcommand("synth-exists", "Synthesize parameters making the model exists-opaque");
    common(synth);
    synth->add_option("--depth", o.depth, "Discrete steps per path");

    auto* lu_classify = app.add_subcommand("lu-classify", "Lower/upper role of each parameter");
    common(lu_classify);
    auto* lu_exists = app.add_subcommand("lu-exists", "Whether an L/U model can be made exists-opaque");
    common(lu_exists);

    auto* sweep = app.add_subcommand("sweep-delta", "Sample the expiring decision over bounds");
    common(sweep);
    with_params(sweep);
    sweep->add_option("--max", o.sweep_max, "Largest finite bound")->required();
    sweep->add_option("--step", o.sweep_step, "Step between bounds")->required();
    sweep->add_option("--mode", o.mode, "weak or full")->check(CLI::IsMember({"weak", "full"}));

    auto* oracle = app.add_subcommand("oracle", "Digitized enumeration of run durations");
    common(oracle);
    with_params(oracle);
    with_delta(oracle);
    oracle->add_option("--granularity", o.granularity, "Grid denominator q")->required();
    oracle->add_option("--horizon", o.horizon, "Largest duration explored")->required();
    oracle->add_option("--max-steps", o.max_steps, "Discrete steps per run (0: unbounded)");

    auto* cross = app.add_subcommand("crosscheck", "Compare the symbolic sets with the oracle");
    common(cross);
    with_params(cross);
    with_delta(cross);
    cross->add_option("--granularity", o.granularity, "Grid denominator (default: twice the model scale)");
    cross->add_option("--horizon", o.horizon, "Largest duration checked");
    cross->add_option("--runs", o.runs, "Random runs");
    cross->add_option("--seed", o.seed, "Random seed");

    std::vector<const char*> argv{"opaq"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (!o.delta.empty() && !check->parsed() && !durations->parsed() && !oracle->parsed() && !cross->parsed())
            throw UsageError("--delta is not accepted here");
        if (check->parsed()) return cmd_check(o, out);
        if (durations->parsed()) return cmd_durations(o, out);
        if (opaque->parsed()) return cmd_opaque_times(o, out);
        if (synth->parsed()) return cmd_synth(o, out);
        if (lu_classify->parsed()) return cmd_lu_classify(o, out);
        if (lu_exists->parsed()) return cmd_lu_exists(o, out);
        if (sweep->parsed()) return cmd_sweep(o, out);
        if (oracle->parsed()) return cmd_oracle(o, out);
        if (cross->parsed()) return cmd_crosscheck(o, out);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return 2;
    } catch (const ModelError& e) {
        for (const auto& d : e.diagnostics()) {
            err << o.model_path;
            if (d.line != 0) err << ':' << d.line << ':' << d.column;
            err << ": " << d.message << '\n';
        }
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace opaq
