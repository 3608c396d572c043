#pragma once

// Convex polyhedra over clocks and parameters in constraint form, and the
// parametric exploration built on them: reachability synthesis and the
// self-composed product used to synthesize ∃-opaque parameter valuations.

#include "opaq/model.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace opaq {

// Σ coeffs[i]·v_i < bound (strict) or ≤ bound.
struct LinearConstraint {
    std::vector<Rational> coeffs;
    Rational bound;
    bool strict = false;

    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

// Variables are the clocks (indices 0..clocks-1) followed by the parameters.
class Polyhedron {
public:
    Polyhedron() = default;
    static Polyhedron universe(std::size_t clocks, std::size_t params);

    [[nodiscard]] std::size_t clocks() const { return clocks_; }
    [[nodiscard]] std::size_t params() const { return params_; }
    [[nodiscard]] std::size_t dims() const { return clocks_ + params_; }
    [[nodiscard]] const std::vector<LinearConstraint>& constraints() const { return cons_; }
    // True when canonicalization already met a contradictory constant constraint.
    [[nodiscard]] bool trivially_empty() const { return contradiction_; }

    void add(LinearConstraint c);
    void add(const AtomicConstraint& atom);
    void add(const Constraint& c);

    [[nodiscard]] bool contains(const std::vector<Rational>& point) const;

    // Drops constraints implied by the others.
    void minimize();

    friend bool operator==(const Polyhedron&, const Polyhedron&) = default;

private:
    friend Polyhedron eliminate(const Polyhedron& p, std::size_t var);
    friend Polyhedron poly_elapse(const Polyhedron& p);
    friend Polyhedron poly_project_params(const Polyhedron& p);

    std::size_t clocks_ = 0;
    std::size_t params_ = 0;
    std::vector<LinearConstraint> cons_;
    bool contradiction_ = false;
};

// Existential projection of one variable; the variable stays in the space, unconstrained.
Polyhedron eliminate(const Polyhedron& p, std::size_t var);

Polyhedron poly_meet(const Polyhedron& p, const Constraint& c);
Polyhedron poly_meet(const Polyhedron& p, const Polyhedron& q);
Polyhedron poly_elapse(const Polyhedron& p);
Polyhedron poly_reset(const Polyhedron& p, const std::vector<ClockId>& clocks);
bool poly_is_empty(const Polyhedron& p);
// Result has no clock variables.
Polyhedron poly_project_params(const Polyhedron& p);
// q ⊆ p
bool poly_includes(const Polyhedron& p, const Polyhedron& q);

// Finite union of parameter polyhedra, read over non-negative parameters.
struct ParamConstraint {
    std::vector<std::string> params;
    std::vector<Polyhedron> disjuncts;

    [[nodiscard]] bool is_empty() const { return disjuncts.empty(); }
    [[nodiscard]] bool contains(const ParamValuation& v) const;
    // Adds a disjunct unless already covered; drops disjuncts it covers.
    void add(Polyhedron p);
};

std::string format_linear(const LinearConstraint& c, const std::vector<std::string>& names);
LinearConstraint parse_linear(std::string_view text, const std::vector<std::string>& names);

nlohmann::ordered_json to_json(const ParamConstraint& c);
ParamConstraint param_constraint_from_json(const nlohmann::json& j, const std::vector<std::string>& params);
std::string to_string(const ParamConstraint& c);

struct SelfComposition {
    Model product;
    LocId target = 0;
};

// Copy A tracks whether the private location was visited, copy B never
// visits it; both must enter the final location at the same instant and
// then take a joint `finish` step. Target: A finished with the flag set, B finished.
SelfComposition self_compose(const Model& m);

struct SynthOptions {
    std::optional<std::size_t> depth_limit = 200;  // discrete steps on a path; nullopt: unbounded
    bool subsumption = true;
};

struct SynthResult {
    ParamConstraint constraint;
    bool complete = false;  // false: under-approximation
    std::size_t states = 0;
};

SynthResult synth_reach(const Model& m, LocId target, const SynthOptions& options = {});
SynthResult synth_exists_opaque(const Model& m, const SynthOptions& options = {});

// Whether some parameter valuation makes an L/U model ∃-opaque.
// Throws std::invalid_argument when the model is not L/U.
bool lu_exists_nonempty(const Model& m);
// Lower-bound parameters set to 0, atoms mentioning upper-bound parameters removed.
Model lu_extremal(const Model& m);

}  // namespace opaq
