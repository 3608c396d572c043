#include "opaq/polyparam.hpp"

#include "opaq/opacity.hpp"

#include <doctest.h>

#include <random>

using namespace opaq;

namespace {

std::string models(const char* name) { return std::string(OPAQ_MODELS_DIR) + "/" + name; }

LinearConstraint lc(std::vector<std::int64_t> coeffs, std::int64_t bound, bool strict = false) {
    LinearConstraint c;
    for (auto k : coeffs) c.coeffs.emplace_back(k);
    c.bound = bound;
    c.strict = strict;
    return c;
}

AtomicConstraint atom(ClockId x, Rel r, std::int64_t c, std::map<ParamId, std::int64_t> coeffs = {}) {
    return {x, r, std::move(coeffs), Rational(c)};
}

}  // namespace

TEST_SUITE("polyparam") {
    TEST_CASE("meet and emptiness") {
        Polyhedron p = Polyhedron::universe(1, 0);
        p.add(atom(0, Rel::Lt, 1));
        CHECK_FALSE(poly_is_empty(p));
        p.add(atom(0, Rel::Gt, 1));
        CHECK(poly_is_empty(p));
        Polyhedron q = Polyhedron::universe(1, 0);
        CHECK(poly_meet(q, Constraint{}) == q);
    }

    TEST_CASE("elapse") {
        Polyhedron p = Polyhedron::universe(2, 0);
        p.add(atom(0, Rel::Eq, 0));
        p.add(atom(1, Rel::Eq, 1));
        Polyhedron e = poly_elapse(p);
        CHECK(e.contains({Rational(2), Rational(3)}));
        CHECK_FALSE(e.contains({Rational(2), Rational(2)}));
        CHECK_FALSE(e.contains({Rational(-1), Rational(0)}));
        CHECK(poly_elapse(e) == e);
    }

    TEST_CASE("reset") {
        Polyhedron p = Polyhedron::universe(2, 0);
        p.add(atom(0, Rel::Eq, 2));
        p.add(atom(1, Rel::Eq, 2));
        Polyhedron r = poly_reset(p, {0});
        CHECK(r.contains({Rational(0), Rational(2)}));
        CHECK_FALSE(r.contains({Rational(2), Rational(2)}));
        CHECK(poly_reset(p, {}) == p);
    }

    TEST_CASE("projection onto parameters") {
        // p1 <= x <= 3, x <= p2
        Polyhedron p = Polyhedron::universe(1, 2);
        p.add(atom(0, Rel::Ge, 0, {{0, 1}}));
        p.add(atom(0, Rel::Le, 3));
        p.add(atom(0, Rel::Le, 0, {{1, 1}}));
        Polyhedron pr = poly_project_params(p);
        pr.minimize();
        ParamConstraint c{{"p1", "p2"}, {pr}};
        CHECK(to_json(c).dump() == R"([["p1 <= p2","p1 <= 3"]])");
    }

    TEST_CASE("Fourier-Motzkin matches a one-variable witness search") {
        std::mt19937_64 rng(31);
        auto small = [&] { return static_cast<std::int64_t>(rng() % 7) - 3; };
        for (int i = 0; i < 200; ++i) {
            Polyhedron p = Polyhedron::universe(3, 0);
            for (int k = 0; k < 4; ++k) p.add(lc({small(), small(), small()}, small(), rng() % 2 == 0));
            Polyhedron e = eliminate(p, 2);
            for (int t = 0; t < 10; ++t) {
                Rational a(small(), 2), b(small(), 2);
                // Exact interval for the third variable given (a, b).
                std::optional<Rational> lo, hi;
                bool lo_strict = false, hi_strict = false, infeasible = p.trivially_empty();
                for (const auto& c : p.constraints()) {
                    Rational rest = c.bound - c.coeffs[0] * a - c.coeffs[1] * b;
                    if (c.coeffs[2] == 0) {
                        if (c.strict ? !(0 < rest) : !(0 <= rest)) infeasible = true;
                    } else if (c.coeffs[2] > 0) {
                        Rational v = rest / c.coeffs[2];
                        if (!hi || v < *hi || (v == *hi && c.strict)) {
                            hi_strict = (hi && v == *hi) ? (hi_strict || c.strict) : c.strict;
                            hi = v;
                        }
                    } else {
                        Rational v = rest / c.coeffs[2];
                        if (!lo || v > *lo || (v == *lo && c.strict)) {
                            lo_strict = (lo && v == *lo) ? (lo_strict || c.strict) : c.strict;
                            lo = v;
                        }
                    }
                }
                if (lo && hi && (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict)))) infeasible = true;
                CHECK(e.contains({a, b, Rational(0)}) == !infeasible);
            }
        }
    }

    TEST_CASE("inclusion") {
        Polyhedron p = Polyhedron::universe(1, 0);
        p.add(atom(0, Rel::Le, 3));
        Polyhedron q = p;
        q.add(atom(0, Rel::Ge, 1));
        CHECK(poly_includes(p, p));
        CHECK(poly_includes(p, q));
        CHECK_FALSE(poly_includes(q, p));
    }

    TEST_CASE("constraint text round trip") {
        std::vector<std::string> names{"p1", "p2"};
        for (const char* s : {"p1 <= p2", "p1 <= 3", "2*p1 + p2 < 7/2", "p1 >= 1", "p2 > p1 + 1"}) {
            LinearConstraint c = parse_linear(s, names);
            CHECK(format_linear(parse_linear(format_linear(c, names), names), names) == format_linear(c, names));
        }
        CHECK(format_linear(parse_linear("p1 <= p2", names), names) == "p1 <= p2");
        CHECK_THROWS(parse_linear("p1 <= q", names));
        CHECK_THROWS(parse_linear("p1 == 2", names));
        ParamConstraint c{names, {}};
        Polyhedron d = Polyhedron::universe(0, 2);
        d.add(parse_linear("p1 <= p2", names));
        c.add(d);
        auto back = param_constraint_from_json(nlohmann::json::parse(to_json(c).dump()), names);
        CHECK(to_json(back).dump() == to_json(c).dump());
    }

    TEST_CASE("self composition shape") {
        Model m = load_model(models("priv_branch_param.ta"));
        SelfComposition sc = self_compose(m);
        CHECK(sc.product.clocks.size() == 3);
        CHECK(sc.product.params == m.params);
        CHECK(sc.product.locations.size() == (2 * 3 + 2) * (3 + 1));
        CHECK(sc.product.locations[sc.target] == "end#1|end");
    }

    TEST_CASE("synthesis on the parametric fixture") {
        Model m = load_model(models("priv_branch_param.ta"));
        SynthResult r = synth_exists_opaque(m);
        CHECK(r.complete);
        CHECK(to_json(r.constraint).dump() == R"([["p1 <= p2","p1 <= 3"]])");
        CHECK(r.constraint.contains({{"p1", Rational(1)}, {"p2", Rational(2)}}));
        CHECK_FALSE(r.constraint.contains({{"p1", Rational(4)}, {"p2", Rational(5)}}));

        SynthOptions none;
        none.subsumption = false;
        SynthResult unpruned = synth_exists_opaque(m, none);
        CHECK(unpruned.complete);
        CHECK(to_json(unpruned.constraint).dump() == to_json(r.constraint).dump());

        SynthOptions zero;
        zero.depth_limit = 0;
        SynthResult z = synth_exists_opaque(m, zero);
        CHECK_FALSE(z.complete);
        CHECK(z.constraint.is_empty());
    }

    TEST_CASE("private location on every path") {
        Model m = parse_model(R"(clocks: x; params: p;
init: a; private: b; final: c;
loc a; loc b; loc c;
edge a -> b when x >= p;
edge b -> c;
)");
        SynthResult r = synth_exists_opaque(m);
        CHECK(r.complete);
        CHECK(r.constraint.is_empty());
        CHECK_FALSE(lu_exists_nonempty(m));
    }

    TEST_CASE("parameter-free model") {
        Model m = load_model(models("priv_branch.ta"));
        SynthResult r = synth_exists_opaque(m);
        CHECK(r.complete);
        CHECK(r.constraint.is_empty() == !decide_exists(m).answer);
        CHECK(lu_exists_nonempty(m) == decide_exists(m).answer);
    }

    TEST_CASE("L/U extremal model") {
        Model m = load_model(models("priv_branch_param.ta"));
        Model e = lu_extremal(m);
        CHECK_FALSE(e.is_parametric());
        CHECK(e.edges[0].guard.conjuncts.size() == 1);  // x >= 0
        CHECK(e.edges[1].guard.is_true());
        CHECK(lu_exists_nonempty(m));
        CHECK_THROWS_AS(lu_exists_nonempty(parse_model(R"(clocks: x; params: p;
init: a; private: b; final: c; loc a; loc b; loc c;
edge a -> b when x == p;
edge b -> c;
)")),
                        std::invalid_argument);
    }
}
