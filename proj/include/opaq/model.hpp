#pragma once

// (Parametric) timed automata with a distinguished private location, plus
// the transformations every analysis starts from: parsing, instantiating
// parameters, integer rescaling, L/U classification and clock bounds.

#include "opaq/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace opaq {

using ClockId = std::size_t;
using ParamId = std::size_t;
using LocId = std::size_t;

enum class Rel : std::uint8_t { Lt, Le, Eq, Ge, Gt };

std::string_view to_string(Rel rel);

// x ⋈ Σ coeff·p + constant
struct AtomicConstraint {
    ClockId clock = 0;
    Rel rel = Rel::Le;
    std::map<ParamId, std::int64_t> coeffs;  // zero coefficients are never stored
    Rational constant;

    [[nodiscard]] bool is_parametric() const { return !coeffs.empty(); }
    friend bool operator==(const AtomicConstraint&, const AtomicConstraint&) = default;
};

// Conjunction; empty means `true`.
struct Constraint {
    std::vector<AtomicConstraint> conjuncts;

    [[nodiscard]] bool is_true() const { return conjuncts.empty(); }
    friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct Edge {
    LocId source = 0;
    Constraint guard;
    std::string action;            // empty: internal step without a label
    std::vector<ClockId> resets;   // sorted, unique
    LocId target = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Model {
    std::vector<std::string> clocks;
    std::vector<std::string> params;  // empty for a plain TA
    std::vector<std::string> locations;
    LocId init = 0;
    LocId priv = 0;
    LocId final = 0;
    std::vector<Constraint> invariants;  // one per location
    std::vector<Edge> edges;

    [[nodiscard]] bool is_parametric() const { return !params.empty(); }
    [[nodiscard]] std::vector<std::string> actions() const;
    [[nodiscard]] std::optional<ClockId> find_clock(std::string_view name) const;
    [[nodiscard]] std::optional<ParamId> find_param(std::string_view name) const;
    [[nodiscard]] std::optional<LocId> find_location(std::string_view name) const;

    // Returns a name not yet used by any clock, parameter or location.
    [[nodiscard]] std::string fresh_name(std::string_view base) const;

    friend bool operator==(const Model&, const Model&) = default;
};

struct Diagnostic {
    std::size_t line = 0;  // 1-based; 0 when no source position applies
    std::size_t column = 0;
    std::string message;
};

class ModelError : public std::runtime_error {
public:
    explicit ModelError(std::vector<Diagnostic> diagnostics);

    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

// Structural checks shared by the parser and programmatic construction.
// Throws ModelError listing every violation.
void validate(const Model& m);

Model parse_model(std::string_view text);
Model load_model(const std::string& path);

// Canonical text form; parse_model(serialize(m)) == m for validated models.
std::string serialize(const Model& m);
std::string format_constraint(const Model& m, const Constraint& c);
std::string format_atom(const Model& m, const AtomicConstraint& a);

using ParamValuation = std::map<std::string, Rational>;

// Substitutes every parameter. The result has no parameters; its
// constants may be rational or negative until rescaled.
Model apply_valuation(const Model& m, const ParamValuation& v);

struct RescaledModel {
    Model model;
    DeltaBound delta;
    std::int64_t scale = 1;
};

// Multiplies every constant (and a finite delta) by the lcm of their
// denominators. Atoms with negative constants are folded: lower bounds
// become trivially true (dropped), upper bounds and equalities become the
// unsatisfiable `x < 0`. Afterwards every constant is a natural number.
RescaledModel rescale_to_integers(const Model& m, const DeltaBound& delta = DeltaBound::infinity());

enum class BoundRole : std::uint8_t { Lower, Upper };

struct LuViolation {
    std::string where;  // "invariant of l0" or "guard of edge l0 -> l2"
    AtomicConstraint atom;
    ParamId param = 0;
};

struct LuVerdict {
    bool is_lu = true;
    std::vector<BoundRole> roles;  // per parameter; unused parameters are Lower
    std::optional<LuViolation> violation;
};

LuVerdict classify_lu(const Model& m);

// Largest constant compared against each clock in guards and invariants;
// `expiring_clock`, when given, is additionally bounded below by a finite delta.
std::vector<std::int64_t> max_constants(const Model& m, const DeltaBound& delta = DeltaBound::infinity(),
                                        std::optional<ClockId> expiring_clock = std::nullopt);

}  // namespace opaq
