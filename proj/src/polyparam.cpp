#include "opaq/polyparam.hpp"

#include "opaq/opacity.hpp"
#include "opaq/tickgraph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

namespace opaq {

namespace {

using Cons = std::vector<LinearConstraint>;

// Scales so the first nonzero coefficient is ±1. Returns false for a
// constant constraint; `holds` then tells whether it is trivially true.
bool scale_row(LinearConstraint& c, bool& holds) {
    auto it = std::find_if(c.coeffs.begin(), c.coeffs.end(), [](const Rational& r) { return r != 0; });
    if (it == c.coeffs.end()) {
        holds = c.strict ? c.bound > 0 : c.bound >= 0;
        return false;
    }
    Rational f = abs(*it);
    if (f != 1) {
        for (auto& r : c.coeffs) r /= f;
        c.bound /= f;
    }
    return true;
}

bool tighter(const LinearConstraint& a, const LinearConstraint& b) {
    return a.bound < b.bound || (a.bound == b.bound && a.strict && !b.strict);
}

// Sorted by coefficient vector, one constraint per direction. Returns false on contradiction.
bool canonicalize(Cons& cons) {
    Cons out;
    out.reserve(cons.size());
    for (auto& c : cons) {
        bool holds = true;
        if (!scale_row(c, holds)) {
            if (!holds) {
                cons.clear();
                return false;
            }
            continue;
        }
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const LinearConstraint& a, const LinearConstraint& b) {
        if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
        return tighter(a, b);
    });
    Cons dedup;
    for (auto& c : out) {
        if (!dedup.empty() && dedup.back().coeffs == c.coeffs) continue;  // first one is the tightest
        dedup.push_back(std::move(c));
    }
    cons = std::move(dedup);
    return true;
}

// Fourier–Motzkin step. Returns false on contradiction.
bool fm_eliminate(Cons& cons, std::size_t var) {
    Cons pos, neg, rest;
    for (auto& c : cons) {
        if (c.coeffs[var] > 0) pos.push_back(std::move(c));
        else if (c.coeffs[var] < 0) neg.push_back(std::move(c));
        else rest.push_back(std::move(c));
    }
    for (const auto& p : pos) {
        for (const auto& n : neg) {
            const Rational a = p.coeffs[var];
            const Rational b = -n.coeffs[var];
            LinearConstraint c;
            c.coeffs.resize(p.coeffs.size());
            for (std::size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] = p.coeffs[i] / a + n.coeffs[i] / b;
            c.coeffs[var] = 0;
            c.bound = p.bound / a + n.bound / b;
            c.strict = p.strict || n.strict;
            rest.push_back(std::move(c));
        }
    }
    cons = std::move(rest);
    return canonicalize(cons);
}

bool cons_empty(Cons cons, std::size_t dims) {
    if (!canonicalize(cons)) return true;
    std::vector<bool> done(dims, false);
    for (std::size_t round = 0; round < dims; ++round) {
        // Cheapest variable first.
        std::size_t best = dims;
        std::size_t best_cost = 0;
        for (std::size_t v = 0; v < dims; ++v) {
            if (done[v]) continue;
            std::size_t p = 0, n = 0;
            for (const auto& c : cons) {
                if (c.coeffs[v] > 0) ++p;
                else if (c.coeffs[v] < 0) ++n;
            }
            std::size_t cost = p * n;
            if (best == dims || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        done[best] = true;
        if (!fm_eliminate(cons, best)) return true;
        if (cons.empty()) return false;
    }
    return false;
}

LinearConstraint negate(const LinearConstraint& c) {
    LinearConstraint n;
    n.coeffs.reserve(c.coeffs.size());
    for (const auto& r : c.coeffs) n.coeffs.push_back(-r);
    n.bound = -c.bound;
    n.strict = !c.strict;
    return n;
}

LinearConstraint row(std::size_t dims) {
    LinearConstraint c;
    c.coeffs.assign(dims, Rational(0));
    return c;
}

// Parameters are non-negative.
Cons nonneg_rows(const Polyhedron& p) {
    Cons out;
    for (std::size_t i = 0; i < p.params(); ++i) {
        LinearConstraint c = row(p.dims());
        c.coeffs[p.clocks() + i] = -1;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

Polyhedron Polyhedron::universe(std::size_t clocks, std::size_t params) {
    Polyhedron p;
    p.clocks_ = clocks;
    p.params_ = params;
    return p;
}

void Polyhedron::add(LinearConstraint c) {
    if (c.coeffs.size() != dims()) throw std::invalid_argument("constraint dimension mismatch");
    if (contradiction_) return;
    cons_.push_back(std::move(c));
    if (!canonicalize(cons_)) contradiction_ = true;
}

void Polyhedron::add(const AtomicConstraint& atom) {
    // x - Σ a·p ⋈ d
    LinearConstraint c = row(dims());
    c.coeffs[atom.clock] = 1;
    for (const auto& [p, a] : atom.coeffs) c.coeffs[clocks_ + p] = -Rational(a);
    c.bound = atom.constant;
    switch (atom.rel) {
        case Rel::Lt: c.strict = true; add(std::move(c)); break;
        case Rel::Le: add(std::move(c)); break;
        case Rel::Eq: { LinearConstraint n = negate(c); n.strict = false; add(std::move(c)); add(std::move(n)); break; }
        case Rel::Ge: { LinearConstraint n = negate(c); n.strict = false; add(std::move(n)); break; }
        case Rel::Gt: { LinearConstraint n = negate(c); n.strict = true; add(std::move(n)); break; }
    }
}

void Polyhedron::add(const Constraint& c) {
    for (const auto& a : c.conjuncts) add(a);
}

bool Polyhedron::contains(const std::vector<Rational>& point) const {
    if (contradiction_) return false;
    for (const auto& c : cons_) {
        Rational s = 0;
        for (std::size_t i = 0; i < c.coeffs.size(); ++i) s += c.coeffs[i] * point.at(i);
        if (c.strict ? !(s < c.bound) : !(s <= c.bound)) return false;
    }
    return true;
}

void Polyhedron::minimize() {
    if (contradiction_) return;
    const Cons context = nonneg_rows(*this);
    for (std::size_t i = cons_.size(); i-- > 0;) {
        Cons rest = context;
        for (std::size_t j = 0; j < cons_.size(); ++j)
            if (j != i) rest.push_back(cons_[j]);
        rest.push_back(negate(cons_[i]));
        if (cons_empty(std::move(rest), dims())) cons_.erase(cons_.begin() + static_cast<std::ptrdiff_t>(i));
    }
}

Polyhedron eliminate(const Polyhedron& p, std::size_t var) {
    Polyhedron out = p;
    if (out.contradiction_) return out;
    if (!fm_eliminate(out.cons_, var)) out.contradiction_ = true;
    return out;
}

Polyhedron poly_meet(const Polyhedron& p, const Constraint& c) {
    Polyhedron out = p;
    out.add(c);
    return out;
}

Polyhedron poly_meet(const Polyhedron& p, const Polyhedron& q) {
    if (p.dims() != q.dims() || p.clocks() != q.clocks()) throw std::invalid_argument("incompatible polyhedra");
    Polyhedron out = p;
    if (q.trivially_empty()) out.add(LinearConstraint{std::vector<Rational>(p.dims(), Rational(0)), 0, true});
    for (const auto& c : q.constraints()) out.add(c);
    return out;
}

Polyhedron poly_elapse(const Polyhedron& p) {
    if (p.contradiction_) return p;
    // Extra variable δ ≥ 0 at index dims; x ↦ x − δ for every clock.
    const std::size_t n = p.dims();
    Cons cons;
    for (const auto& c : p.cons_) {
        LinearConstraint e = c;
        Rational d = 0;
        for (std::size_t i = 0; i < p.clocks_; ++i) d -= c.coeffs[i];
        e.coeffs.push_back(d);
        cons.push_back(std::move(e));
    }
    LinearConstraint pos;
    pos.coeffs.assign(n + 1, Rational(0));
    pos.coeffs[n] = -1;
    cons.push_back(std::move(pos));
    Polyhedron out = p;
    out.cons_.clear();
    if (!fm_eliminate(cons, n)) {
        out.contradiction_ = true;
        return out;
    }
    for (auto& c : cons) {
        c.coeffs.pop_back();
        out.cons_.push_back(std::move(c));
    }
    canonicalize(out.cons_);
    return out;
}

Polyhedron poly_reset(const Polyhedron& p, const std::vector<ClockId>& clocks) {
    Polyhedron out = p;
    for (ClockId x : clocks) {
        out = eliminate(out, x);
        LinearConstraint c = row(out.dims());
        c.coeffs[x] = 1;
        out.add(c);
        c.coeffs[x] = -1;
        out.add(c);
    }
    return out;
}

bool poly_is_empty(const Polyhedron& p) {
    return p.trivially_empty() || cons_empty(p.constraints(), p.dims());
}

Polyhedron poly_project_params(const Polyhedron& p) {
    Polyhedron out = Polyhedron::universe(0, p.params_);
    if (p.contradiction_) {
        out.contradiction_ = true;
        return out;
    }
    Cons cons = p.cons_;
    for (std::size_t x = 0; x < p.clocks_; ++x) {
        if (!fm_eliminate(cons, x)) {
            out.contradiction_ = true;
            return out;
        }
    }
    for (auto& c : cons) {
        c.coeffs.erase(c.coeffs.begin(), c.coeffs.begin() + static_cast<std::ptrdiff_t>(p.clocks_));
        out.cons_.push_back(std::move(c));
    }
    canonicalize(out.cons_);
    return out;
}

bool poly_includes(const Polyhedron& p, const Polyhedron& q) {
    if (poly_is_empty(q)) return true;
    if (p.trivially_empty()) return false;
    for (const auto& c : p.constraints()) {
        Cons test = q.constraints();
        test.push_back(negate(c));
        if (!cons_empty(std::move(test), q.dims())) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

namespace {

Polyhedron with_nonneg(const Polyhedron& p) {
    Polyhedron out = p;
    for (auto& c : nonneg_rows(p)) out.add(std::move(c));
    return out;
}

}  // namespace

bool ParamConstraint::contains(const ParamValuation& v) const {
    std::vector<Rational> point;
    for (const auto& name : params) {
        auto it = v.find(name);
        if (it == v.end()) throw std::invalid_argument("missing value for parameter " + name);
        if (it->second < 0) return false;
        point.push_back(it->second);
    }
    return std::any_of(disjuncts.begin(), disjuncts.end(), [&](const Polyhedron& d) { return d.contains(point); });
}

void ParamConstraint::add(Polyhedron p) {
    Polyhedron full = with_nonneg(p);
    if (poly_is_empty(full)) return;
    for (const auto& d : disjuncts)
        if (poly_includes(with_nonneg(d), full)) return;
    std::erase_if(disjuncts, [&](const Polyhedron& d) { return poly_includes(full, with_nonneg(d)); });
    p.minimize();
    disjuncts.push_back(std::move(p));
}

namespace {

std::string render_terms(const std::vector<std::pair<Rational, std::string>>& terms, const Rational& constant) {
    std::string out;
    for (const auto& [coef, name] : terms) {
        std::string t = coef == 1 ? name : to_string(coef) + "*" + name;
        out += out.empty() ? t : " + " + t;
    }
    if (constant != 0 || out.empty()) {
        if (out.empty()) out = to_string(constant);
        else out += constant > 0 ? " + " + to_string(constant) : " - " + to_string(Rational(-constant));
    }
    return out;
}

}  // namespace

std::string format_linear(const LinearConstraint& c, const std::vector<std::string>& names) {
    if (c.coeffs.size() != names.size()) throw std::invalid_argument("constraint dimension mismatch");
    // Integer coefficients.
    Integer m = 1;
    for (const auto& r : c.coeffs) m = lcm(m, denominator(r));
    m = lcm(m, denominator(c.bound));
    bool any_pos = std::any_of(c.coeffs.begin(), c.coeffs.end(), [](const Rational& r) { return r > 0; });
    const Rational f = any_pos ? Rational(m) : Rational(-m);

    std::vector<std::pair<Rational, std::string>> lhs, rhs;
    for (std::size_t i = 0; i < names.size(); ++i) {
        Rational k = c.coeffs[i] * f;
        if (k > 0) lhs.emplace_back(k, names[i]);
        else if (k < 0) rhs.emplace_back(-k, names[i]);
    }
    std::string rel = any_pos ? (c.strict ? "<" : "<=") : (c.strict ? ">" : ">=");
    return render_terms(lhs, 0) + " " + rel + " " + render_terms(rhs, c.bound * f);
}

LinearConstraint parse_linear(std::string_view text, const std::vector<std::string>& names) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse constraint '" + std::string(text) + "': " + why);
    };
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    // Σ coeff·name + constant, accumulated into `sign`-scaled row.
    auto expr = [&](std::vector<Rational>& coeffs, Rational& constant, const Rational& sign) {
        bool first = true;
        while (true) {
            skip();
            Rational s = sign;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
                if (text[pos] == '-') s = -s;
                ++pos;
                skip();
            } else if (!first) {
                return;
            }
            first = false;
            std::optional<Rational> num;
            if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) != 0)) {
                std::size_t start = pos;
                while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) != 0 ||
                                             text[pos] == '.' || text[pos] == '/'))
                    ++pos;
                num = parse_rational(text.substr(start, pos - start));
                skip();
                if (pos < text.size() && text[pos] == '*') {
                    ++pos;
                    skip();
                } else {
                    constant += s * *num;
                    continue;
                }
            }
            std::size_t start = pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) != 0 ||
                                         text[pos] == '_' || text[pos] == '.' || text[pos] == '\''))
                ++pos;
            if (start == pos) fail("expected a term");
            std::string name(text.substr(start, pos - start));
            auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end()) fail("unknown parameter " + name);
            coeffs[static_cast<std::size_t>(it - names.begin())] += s * num.value_or(Rational(1));
        }
    };

    std::vector<Rational> coeffs(names.size(), Rational(0));
    Rational constant = 0;
    expr(coeffs, constant, 1);
    skip();
    std::string rel;
    while (pos < text.size() && (text[pos] == '<' || text[pos] == '>' || text[pos] == '=')) rel += text[pos++];
    if (rel != "<" && rel != "<=" && rel != ">" && rel != ">=") fail("expected <, <=, > or >=");
    // lhs - rhs ⋈ 0
    expr(coeffs, constant, -1);
    skip();
    if (pos != text.size()) fail("trailing input");

    LinearConstraint c;
    const bool flip = rel[0] == '>';
    c.coeffs = std::move(coeffs);
    c.bound = -constant;
    if (flip) {
        for (auto& r : c.coeffs) r = -r;
        c.bound = -c.bound;
    }
    c.strict = rel.size() == 1;
    return c;
}

nlohmann::ordered_json to_json(const ParamConstraint& c) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& d : c.disjuncts) {
        nlohmann::ordered_json conj = nlohmann::ordered_json::array();
        for (const auto& lc : d.constraints()) conj.push_back(format_linear(lc, c.params));
        out.push_back(std::move(conj));
    }
    return out;
}

ParamConstraint param_constraint_from_json(const nlohmann::json& j, const std::vector<std::string>& params) {
    ParamConstraint out;
    out.params = params;
    for (const auto& conj : j) {
        Polyhedron p = Polyhedron::universe(0, params.size());
        for (const auto& s : conj) p.add(parse_linear(s.get<std::string>(), params));
        out.disjuncts.push_back(std::move(p));
    }
    return out;
}

std::string to_string(const ParamConstraint& c) {
    if (c.disjuncts.empty()) return "false";
    std::string out;
    for (const auto& d : c.disjuncts) {
        std::string conj;
        for (const auto& lc : d.constraints()) conj += (conj.empty() ? "" : " && ") + format_linear(lc, c.params);
        if (conj.empty()) conj = "true";
        if (c.disjuncts.size() > 1 && d.constraints().size() > 1) conj = "(" + conj + ")";
        out += (out.empty() ? "" : " || ") + conj;
    }
    return out;
}

// ---------------------------------------------------------------------------

SelfComposition self_compose(const Model& m) {
    const std::size_t n = m.clocks.size();
    const std::size_t L = m.locations.size();

    SelfComposition sc;
    Model& p = sc.product;
    p.params = m.params;

    std::set<std::string> used(m.params.begin(), m.params.end());
    auto unique = [&](std::string name) {
        while (used.count(name) != 0U) name += "'";
        used.insert(name);
        return name;
    };
    for (std::size_t i = 0; i < n; ++i) p.clocks.push_back(unique(m.clocks[i] + "_1"));
    for (std::size_t i = 0; i < n; ++i) p.clocks.push_back(unique(m.clocks[i] + "_2"));
    const ClockId z = p.clocks.size();
    p.clocks.push_back(unique("z"));

    auto rename = [&](Constraint c, std::size_t offset) {
        for (auto& a : c.conjuncts) a.clock += offset;
        return c;
    };
    auto urgent = [&](Constraint c) {
        c.conjuncts.push_back({z, Rel::Le, {}, Rational(0)});
        return c;
    };

    // Copy A: 2l + flag, end at 2L + flag. Copy B: l, end at L.
    const std::size_t a_count = 2 * L + 2;
    const std::size_t b_count = L + 1;
    auto a_name = [&](std::size_t a) {
        return (a >= 2 * L ? std::string("end") : m.locations[a / 2]) + "#" + std::to_string(a % 2);
    };
    auto b_name = [&](std::size_t b) { return b == L ? std::string("end") : m.locations[b]; };
    auto a_inv = [&](std::size_t a) {
        if (a >= 2 * L) return Constraint{};
        Constraint c = rename(m.invariants[a / 2], 0);
        return a / 2 == m.final ? urgent(c) : c;
    };
    auto b_inv = [&](std::size_t b) {
        if (b == L) return Constraint{};
        Constraint c = rename(m.invariants[b], n);
        return b == m.final ? urgent(c) : c;
    };
    auto loc = [&](std::size_t a, std::size_t b) { return a * b_count + b; };

    for (std::size_t a = 0; a < a_count; ++a) {
        for (std::size_t b = 0; b < b_count; ++b) {
            p.locations.push_back(a_name(a) + "|" + b_name(b));
            Constraint inv = a_inv(a);
            for (auto& atom : b_inv(b).conjuncts) inv.conjuncts.push_back(atom);
            p.invariants.push_back(std::move(inv));
        }
    }
    p.init = loc(2 * m.init, m.init);
    sc.target = loc(2 * L + 1, L);
    p.priv = p.final = sc.target;

    auto shifted_resets = [&](const Edge& e, std::size_t offset) {
        std::vector<ClockId> r;
        for (ClockId x : e.resets) r.push_back(x + offset);
        if (e.target == m.final) r.push_back(z);
        std::sort(r.begin(), r.end());
        return r;
    };

    for (const auto& e : m.edges) {
        if (e.source == m.final) continue;
        for (std::size_t flag = 0; flag < 2; ++flag) {
            const std::size_t from = 2 * e.source + flag;
            const std::size_t to = 2 * e.target + (flag != 0 || e.target == m.priv ? 1 : 0);
            for (std::size_t b = 0; b < b_count; ++b)
                p.edges.push_back({loc(from, b), rename(e.guard, 0), e.action, shifted_resets(e, 0), loc(to, b)});
        }
    }
    for (const auto& e : m.edges) {
        if (e.source == m.final || e.source == m.priv || e.target == m.priv) continue;
        for (std::size_t a = 0; a < a_count; ++a)
            p.edges.push_back({loc(a, e.source), rename(e.guard, n), e.action, shifted_resets(e, n), loc(a, e.target)});
    }
    for (std::size_t flag = 0; flag < 2; ++flag)
        p.edges.push_back({loc(2 * m.final + flag, m.final), {}, "finish", {}, loc(2 * L + flag, L)});
    return sc;
}

SynthResult synth_reach(const Model& m, LocId target, const SynthOptions& options) {
    const std::size_t nc = m.clocks.size();
    const std::size_t np = m.params.size();
    SynthResult result;
    result.constraint.params = m.params;
    result.complete = true;
    if (options.depth_limit && *options.depth_limit == 0) {
        result.complete = false;
        return result;
    }

    std::vector<std::vector<std::size_t>> out_edges(m.locations.size());
    for (std::size_t i = 0; i < m.edges.size(); ++i) out_edges[m.edges[i].source].push_back(i);

    struct Item {
        LocId loc;
        Polyhedron poly;
        std::size_t depth;
    };

    Polyhedron start = Polyhedron::universe(nc, np);
    for (std::size_t x = 0; x < nc; ++x) start.add(AtomicConstraint{x, Rel::Eq, {}, Rational(0)});
    for (std::size_t i = 0; i < np; ++i) {
        LinearConstraint c;
        c.coeffs.assign(nc + np, Rational(0));
        c.coeffs[nc + i] = -1;
        start.add(std::move(c));
    }
    start = poly_meet(start, m.invariants[m.init]);
    if (poly_is_empty(start)) return result;
    start = poly_meet(poly_elapse(start), m.invariants[m.init]);

    const std::size_t budget = state_budget();
    std::vector<std::vector<Polyhedron>> passed(m.locations.size());
    std::deque<Item> queue;
    passed[m.init].push_back(start);
    queue.push_back({m.init, start, 0});

    while (!queue.empty()) {
        Item it = std::move(queue.front());
        queue.pop_front();
        ++result.states;
        if (it.loc == target) {
            result.constraint.add(poly_project_params(it.poly));
            continue;
        }
        for (std::size_t ei : out_edges[it.loc]) {
            const Edge& e = m.edges[ei];
            Polyhedron q = poly_meet(it.poly, e.guard);
            if (poly_is_empty(q)) continue;
            q = poly_meet(poly_reset(q, e.resets), m.invariants[e.target]);
            if (poly_is_empty(q)) continue;
            q = poly_meet(poly_elapse(q), m.invariants[e.target]);
            q.minimize();
            if (options.depth_limit && it.depth + 1 > *options.depth_limit) {
                result.complete = false;
                continue;
            }
            if (options.subsumption &&
                std::any_of(passed[e.target].begin(), passed[e.target].end(),
                            [&](const Polyhedron& old) { return poly_includes(old, q); }))
                continue;
            if (result.states + queue.size() >= budget) {
                result.complete = false;
                return result;
            }
            if (options.subsumption) passed[e.target].push_back(q);
            queue.push_back({e.target, std::move(q), it.depth + 1});
        }
    }
    return result;
}

SynthResult synth_exists_opaque(const Model& m, const SynthOptions& options) {
    SelfComposition sc = self_compose(m);
    SynthResult r = synth_reach(sc.product, sc.target, options);
    r.constraint.params = m.params;
    return r;
}

Model lu_extremal(const Model& m) {
    LuVerdict v = classify_lu(m);
    if (!v.is_lu) {
        std::string msg = "model is not L/U";
        if (v.violation)
            msg += ": parameter " + m.params[v.violation->param] + " in " + v.violation->where + " (" +
                   format_atom(m, v.violation->atom) + ")";
        throw std::invalid_argument(msg);
    }
    auto extremal = [&](const Constraint& c) {
        Constraint out;
        for (const auto& a : c.conjuncts) {
            bool upper = std::any_of(a.coeffs.begin(), a.coeffs.end(),
                                     [&](const auto& kv) { return v.roles[kv.first] == BoundRole::Upper; });
            if (upper) continue;
            AtomicConstraint b = a;
            b.coeffs.clear();
            out.conjuncts.push_back(std::move(b));
        }
        return out;
    };
    Model out = m;
    out.params.clear();
    for (auto& inv : out.invariants) inv = extremal(inv);
    for (auto& e : out.edges) e.guard = extremal(e.guard);
    return out;
}

bool lu_exists_nonempty(const Model& m) { return decide_exists(lu_extremal(m)).answer; }

}  // namespace opaq
