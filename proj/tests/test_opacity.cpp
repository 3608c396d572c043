#include "opaq/opacity.hpp"

#include "random_models.hpp"

#include <doctest.h>

using namespace opaq;

namespace {

std::string models(const char* name) { return std::string(OPAQ_MODELS_DIR) + "/" + name; }

Model branch(const char* p1, const char* p2) {
    return apply_valuation(load_model(models("priv_branch_param.ta")),
                           {{"p1", parse_rational(p1)}, {"p2", parse_rational(p2)}});
}

}  // namespace

TEST_SUITE("opacity") {
    TEST_CASE("duration sets of the branching fixture") {
        DurationReport r = duration_report(load_model(models("priv_branch.ta")));
        CHECK(r.d_visit == DurationSet::from_intervals({Interval::closed(1, 2)}));
        CHECK(r.d_avoid == DurationSet::from_intervals({Interval::closed(0, 3)}));
        CHECK_FALSE(r.d_secret.has_value());
    }

    TEST_CASE("verdicts and witnesses") {
        Model m = load_model(models("priv_branch.ta"));
        CHECK(decide_exists(m).answer);
        CHECK(decide_weak(m).answer);
        Verdict full = decide_full(m);
        CHECK_FALSE(full.answer);
        REQUIRE(full.witness.has_value());
        // a separating duration lies in exactly one of the two sets
        DurationReport r = duration_report(m);
        CHECK(r.d_visit.contains(*full.witness) != r.d_avoid.contains(*full.witness));
        CHECK(to_json(full).dump() == R"({"problem":"full","answer":false,"witness":"0"})");
    }

    TEST_CASE("parametric instances") {
        CHECK(decide_full(branch("0", "3")).answer);
        CHECK_FALSE(decide_full(branch("1", "2")).answer);
        CHECK(decide_weak(branch("1", "2")).answer);
        CHECK_FALSE(decide_exists(branch("4", "5")).answer);
        CHECK_THROWS_AS(duration_report(load_model(models("priv_branch_param.ta"))), std::invalid_argument);
    }

    TEST_CASE("expiring sets") {
        DurationReport r = duration_report(branch("1", "2.5"), DeltaBound(Rational(1)));
        CHECK(r.d_secret->to_string() == "[1, 2.5]");
        CHECK(r.d_late->to_string() == "(2, 2.5]");
        CHECK(decide(r, Problem::ExistsExp).answer);
        CHECK(decide(r, Problem::WeakExp).answer);
        CHECK_FALSE(decide(r, Problem::FullExp).answer);
        CHECK_THROWS_AS(decide(duration_report(branch("1", "2.5")), Problem::WeakExp), std::invalid_argument);
    }

    TEST_CASE("infinite expiry matches the plain problems") {
        std::mt19937_64 rng(17);
        for (int i = 0; i < 40; ++i) {
            Model m = testing::random_model(rng);
            DurationReport plain = duration_report(m);
            DurationReport inf = duration_report(m, DeltaBound::infinity());
            CHECK(*inf.d_secret == plain.d_visit);
            CHECK(inf.d_late->is_empty());
            CHECK(decide(plain, Problem::Full).answer == decide(inf, Problem::FullExp).answer);
            CHECK(decide(plain, Problem::Weak).answer == decide(inf, Problem::WeakExp).answer);
        }
    }

    TEST_CASE("secret and late partition the private durations' runs") {
        std::mt19937_64 rng(23);
        for (int i = 0; i < 40; ++i) {
            Model m = testing::random_model(rng);
            DurationReport r = duration_report(m, DeltaBound(Rational(static_cast<std::int64_t>(rng() % 3))));
            CHECK(set_equals(set_union(*r.d_secret, *r.d_late), r.d_visit));
        }
    }

    TEST_CASE("opaque times") {
        CHECK(compute_opaque_times(load_model(models("priv_branch.ta"))).to_string() == "[1, 2]");
        DurationSet t = compute_opaque_times(load_model(models("integer_exit.ta")));
        CHECK(t.is_periodic());
        CHECK(t.period() == 1);
        CHECK(t.contains(Rational(2)));
        CHECK_FALSE(t.contains(Rational(5, 2)));
    }

    TEST_CASE("delta sweep") {
        auto pts = sweep_delta(branch("1", "2.5"), Rational(2), Rational(1), SweepMode::Weak);
        REQUIRE(pts.size() == 4);
        CHECK(pts.back().delta.is_infinite());
        for (const auto& p : pts) CHECK(p.answer);
        CHECK_THROWS(sweep_delta(branch("1", "2"), Rational(1), Rational(0), SweepMode::Full));
    }

    TEST_CASE("problem names") {
        CHECK(parse_problem("weak", true) == Problem::WeakExp);
        CHECK(to_string(Problem::FullExp) == "full_exp");
        CHECK_THROWS(parse_problem("strong", false));
    }
}
