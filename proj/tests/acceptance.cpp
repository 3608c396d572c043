// One line per acceptance criterion; exit status 1 if any fails.
// Every comparison is exact (rational arithmetic, zero tolerance).

#include "opaq/cli.hpp"
#include "opaq/opacity.hpp"
#include "opaq/oracle.hpp"
#include "opaq/polyparam.hpp"

#include "random_models.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace opaq;
using Json = nlohmann::json;

namespace {

std::string models(const char* name) { return std::string(OPAQ_MODELS_DIR) + "/" + name; }

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

Json cli_json(std::vector<std::string> args) {
    args.insert(args.end() - 1, {"--format", "json"});
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    if (code != 0) throw Failure("exit " + std::to_string(code) + ": " + err.str());
    return Json::parse(out.str());
}

std::string set_text(const Json& j) { return duration_set_from_json(j).to_string(); }

std::vector<std::string> bind(const Rational& p1, const Rational& p2) {
    return {"--param", "p1=" + to_string(p1), "--param", "p2=" + to_string(p2)};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool verdict(const std::string& problem, const std::vector<std::string>& extra, const char* model) {
    auto args = concat({"check", "--problem", problem}, extra);
    args.push_back(models(model));
    return cli_json(args)["answer"].get<bool>();
}

std::vector<Rational> half_grid() {
    std::vector<Rational> g;
    for (int k = 0; k <= 8; ++k) g.emplace_back(k, 2);
    return g;
}

// ---------------------------------------------------------------------------

std::string criterion1() {
    Json d = cli_json({"durations", models("priv_branch.ta")});
    expect(set_text(d["d_visit"]) == "[1, 2]", "DVisit = " + set_text(d["d_visit"]));
    expect(set_text(d["d_avoid"]) == "[0, 3]", "DAvoid = " + set_text(d["d_avoid"]));
    Json t = cli_json({"opaque-times", models("priv_branch.ta")});
    expect(set_text(t["opaque_times"]) == "[1, 2]", "opaque times = " + set_text(t["opaque_times"]));
    expect(verdict("exists", {}, "priv_branch.ta"), "exists should hold");
    expect(verdict("weak", {}, "priv_branch.ta"), "weak should hold");
    expect(!verdict("full", {}, "priv_branch.ta"), "full should fail");
    return "DVisit = [1, 2], DAvoid = [0, 3], opaque times [1, 2], verdicts (true, true, false)";
}

std::string criterion2() {
    expect(verdict("full", bind(0, 3), "priv_branch_param.ta"), "full at (0, 3)");
    expect(!verdict("full", bind(1, 2), "priv_branch_param.ta"), "full at (1, 2)");
    expect(verdict("weak", bind(1, 2), "priv_branch_param.ta"), "weak at (1, 2)");
    return "full(0, 3) = true, full(1, 2) = false, weak(1, 2) = true";
}

std::string criterion3() {
    auto b = bind(1, Rational(5, 2));
    auto d = cli_json(concat(concat({"durations", "--delta", "1"}, b), {models("priv_branch_param.ta")}));
    expect(set_text(d["d_avoid"]) == "[0, 3]", "d_avoid = " + set_text(d["d_avoid"]));
    expect(set_text(d["d_late"]) == "(2, 2.5]", "d_late = " + set_text(d["d_late"]));
    expect(set_text(d["d_secret"]) == "[1, 2.5]", "d_secret = " + set_text(d["d_secret"]));
    auto exp = concat({"--delta", "1"}, b);
    expect(verdict("exists", exp, "priv_branch_param.ta"), "exists_exp");
    expect(verdict("weak", exp, "priv_branch_param.ta"), "weak_exp");
    expect(!verdict("full", exp, "priv_branch_param.ta"), "full_exp");
    auto inf = concat({"--delta", "inf"}, b);
    for (const char* p : {"exists", "weak", "full"})
        expect(verdict(p, inf, "priv_branch_param.ta") == verdict(p, b, "priv_branch_param.ta"),
               std::string("delta = inf differs for ") + p);
    return "d_avoid = [0, 3], d_late = (2, 2.5], d_secret = [1, 2.5], verdicts (true, true, false), inf = plain";
}

std::string criterion4() {
    std::size_t points = 0;
    for (const auto& p1 : half_grid())
        for (const auto& p2 : half_grid())
            for (const auto& delta : half_grid()) {
                const bool expected = p1 == 0 && ((delta <= 3 && 3 <= p2 && p2 <= delta + 3) || (p2 < delta && p2 == 3));
                auto args = concat({"--delta", to_string(delta)}, bind(p1, p2));
                bool got = verdict("full", args, "priv_branch_param.ta");
                expect(got == expected, "mismatch at p1=" + to_string(p1) + " p2=" + to_string(p2) +
                                            " delta=" + to_string(delta));
                ++points;
            }
    return std::to_string(points) + "/729 grid points match";
}

std::string criterion5() {
    Json t = cli_json({"opaque-times", models("integer_exit.ta")});
    DurationSet s = duration_set_from_json(t["opaque_times"]);
    expect(s.is_periodic() && s.period() == Integer(s.scale()), "not period 1: " + s.to_string());
    for (const auto& iv : s.initial()) expect(iv.hi && iv.lo == *iv.hi, "non-point interval in " + s.to_string());
    for (const auto& iv : s.base()) expect(iv.hi && iv.lo == *iv.hi, "non-point interval in " + s.to_string());
    expect(s.contains(Rational(2)), "2 rejected");
    expect(!s.contains(Rational(5, 2)), "2.5 accepted");
    Model m = load_model(models("integer_exit.ta"));
    auto dis = crosscheck(digitized_durations(m, 2, Rational(6)), duration_report(m), false);
    expect(dis.empty(), "oracle disagrees at q = 2, horizon 6");
    return "opaque times " + s.to_string() + ", contains(2) && !contains(2.5), oracle agrees at q = 2";
}

std::string criterion6() {
    Json r = cli_json({"synth-exists", models("priv_branch_param.ta")});
    expect(r["complete"].get<bool>(), "synthesis incomplete");
    Model m = load_model(models("priv_branch_param.ta"));
    ParamConstraint c = param_constraint_from_json(r["constraint"], m.params);
    std::size_t points = 0;
    for (const auto& p1 : half_grid())
        for (const auto& p2 : half_grid()) {
            const bool in = c.contains({{"p1", p1}, {"p2", p2}});
            const bool decided = verdict("exists", bind(p1, p2), "priv_branch_param.ta");
            const bool expected = p1 <= p2 && p1 <= 3;
            expect(in == decided && in == expected,
                   "mismatch at p1=" + to_string(p1) + " p2=" + to_string(p2));
            ++points;
        }
    return "complete, " + to_string(c) + ", " + std::to_string(points) + "/81 grid points agree";
}

std::string criterion7() {
    std::mt19937_64 rng(2024);
    std::size_t closed = 0, strict = 0, checked_points = 0;
    for (int i = 0; i < 150; ++i) {
        testing::RandomModelOptions o;
        o.strict = i % 5 == 4;
        Model m = testing::random_model(rng, o);
        std::optional<DeltaBound> delta;
        if (i % 2 == 1) delta = DeltaBound(Rational(static_cast<std::int64_t>(rng() % 4)));
        DurationReport sets = duration_report(m, delta);
        SampleReport grid = digitized_durations(m, 2 * sets.scale, crosscheck_horizon(sets), std::nullopt, delta);
        const bool soundness_only = has_strict_constraints(m);
        auto dis = crosscheck(grid, sets, soundness_only);
        auto runs = crosscheck(random_runs(m, 20, static_cast<std::uint64_t>(i)), sets);
        if (!dis.empty() || !runs.empty()) {
            const auto& d = dis.empty() ? runs.front() : dis.front();
            throw Failure("model " + std::to_string(i) + ": " + d.set + " at " + to_string(d.duration) + "\n" +
                          serialize(m));
        }
        (soundness_only ? strict : closed) += 1;
        checked_points += grid.d_visit.size();
    }
    expect(closed >= 100, "fewer than 100 closed-guard models");
    return std::to_string(closed) + " closed-guard and " + std::to_string(strict) +
           " strict-guard models, " + std::to_string(checked_points) + " grid points, 0 disagreements";
}

std::string criterion8() {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 1000; ++i) {
        DurationSet a = testing::random_duration_set(rng, 1 + static_cast<std::int64_t>(rng() % 2));
        DurationSet b = testing::random_duration_set(rng, 2);
        expect(set_equals(set_complement(set_complement(a)), a), "complement involution: " + a.to_string());
        expect(set_equals(set_complement(set_union(a, b)), set_intersection(set_complement(a), set_complement(b))),
               "De Morgan (union): " + a.to_string() + " / " + b.to_string());
        expect(set_equals(set_complement(set_intersection(a, b)), set_union(set_complement(a), set_complement(b))),
               "De Morgan (intersection): " + a.to_string() + " / " + b.to_string());
        expect(is_subset(a, b) == set_difference(a, b).is_empty(), "subset vs empty difference");
        if (auto w = a.witness()) expect(a.contains(*w), "set witness outside " + a.to_string());
    }
    std::size_t witnesses = 0;
    for (int i = 0; i < 150; ++i) {
        Model m = testing::random_model(rng);
        DeltaBound delta(Rational(static_cast<std::int64_t>(rng() % 4), 1 + static_cast<std::int64_t>(rng() % 2)));
        DurationReport plain = duration_report(m);
        DurationReport exp = duration_report(m, delta);
        auto full = decide(plain, Problem::Full), weak = decide(plain, Problem::Weak);
        auto full_exp = decide(exp, Problem::FullExp), weak_exp = decide(exp, Problem::WeakExp);
        expect(!full.answer || weak.answer, "full without weak");
        expect(!full_exp.answer || weak_exp.answer, "full_exp without weak_exp");
        for (const auto& [v, report] : {std::pair{decide(plain, Problem::Exists), &plain}, std::pair{full, &plain},
                                        std::pair{weak, &plain}, std::pair{decide(exp, Problem::ExistsExp), &exp},
                                        std::pair{full_exp, &exp}, std::pair{weak_exp, &exp}}) {
            if (!v.witness) continue;
            ++witnesses;
            const bool expiring = v.delta.has_value();
            const DurationSet& secret = expiring ? *report->d_secret : report->d_visit;
            const DurationSet cover = expiring ? set_union(*report->d_late, report->d_avoid) : report->d_avoid;
            const bool in_s = secret.contains(*v.witness), in_c = cover.contains(*v.witness);
            const bool ok = (v.problem == Problem::Exists || v.problem == Problem::ExistsExp) ? (in_s && in_c)
                            : (v.problem == Problem::Weak || v.problem == Problem::WeakExp) ? (in_s && !in_c)
                                                                                             : (in_s != in_c);
            expect(ok, "witness " + to_string(*v.witness) + " fails its re-check");
        }
    }
    return "1000 set-law rounds, 150 models: full => weak, full_exp => weak_exp, " + std::to_string(witnesses) +
           " witnesses re-checked";
}

std::string criterion9() {
    Json c = cli_json({"lu-classify", models("priv_branch_param.ta")});
    expect(c["is_lu"].get<bool>(), "not classified as L/U");
    expect(c["roles"]["p1"] == "lower" && c["roles"]["p2"] == "upper", "roles " + c["roles"].dump());
    Json e = cli_json({"lu-exists", models("priv_branch_param.ta")});
    Json s = cli_json({"synth-exists", models("priv_branch_param.ta")});
    expect(e["nonempty"].get<bool>() == !s["constraint"].empty(), "lu-exists inconsistent with synthesis");
    expect(e["nonempty"].get<bool>(), "lu-exists reports empty");
    return "roles {p1: lower, p2: upper}, lu-exists non-empty, consistent with synthesis";
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<std::string()>>> criteria{
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};
    int failed = 0;
    for (const auto& [id, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = run();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " (" << ms << " ms) " << detail
                  << std::endl;
        failed += ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
