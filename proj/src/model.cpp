#include "opaq/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace opaq {

std::string_view to_string(Rel rel) {
    switch (rel) {
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Eq: return "==";
        case Rel::Ge: return ">=";
        case Rel::Gt: return ">";
    }
    return "?";
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    std::ostringstream out;
    for (std::size_t i = 0; i < diagnostics.size(); ++i) {
        if (i > 0) out << '\n';
        const auto& d = diagnostics[i];
        if (d.line > 0) out << d.line << ':' << d.column << ": ";
        out << d.message;
    }
    return out.str();
}

template <typename Names>
std::optional<std::size_t> index_of(const Names& names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

ModelError::ModelError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::vector<std::string> Model::actions() const {
    std::set<std::string> names;
    for (const auto& e : edges)
        if (!e.action.empty()) names.insert(e.action);
    return {names.begin(), names.end()};
}

std::optional<ClockId> Model::find_clock(std::string_view name) const { return index_of(clocks, name); }
std::optional<ParamId> Model::find_param(std::string_view name) const { return index_of(params, name); }
std::optional<LocId> Model::find_location(std::string_view name) const { return index_of(locations, name); }

std::string Model::fresh_name(std::string_view base) const {
    std::string name(base);
    while (find_clock(name) || find_param(name) || find_location(name)) name += "'";
    return name;
}

void validate(const Model& m) {
    std::vector<Diagnostic> errors;
    auto fail = [&](std::string msg) { errors.push_back({0, 0, std::move(msg)}); };

    const std::size_t nloc = m.locations.size();
    if (nloc == 0) fail("model has no locations");
    if (m.invariants.size() != nloc) fail("invariant table does not match the location count");
    for (auto [role, id] : {std::pair{"init", m.init}, std::pair{"private", m.priv}, std::pair{"final", m.final}})
        if (id >= nloc) fail(std::string(role) + " location is not declared");
    if (errors.empty()) {
        if (m.init == m.priv || m.init == m.final || m.priv == m.final)
            fail("init, private and final locations must be pairwise distinct");
    }

    std::set<std::string> seen;
    for (const auto* names : {&m.clocks, &m.params})
        for (const auto& n : *names)
            if (!seen.insert(n).second) fail("duplicate clock/parameter name '" + n + "'");
    std::set<std::string> locs;
    for (const auto& n : m.locations)
        if (!locs.insert(n).second) fail("duplicate location '" + n + "'");

    auto check_constraint = [&](const Constraint& c, const std::string& where) {
        for (const auto& a : c.conjuncts) {
            if (a.clock >= m.clocks.size()) fail(where + " references an undeclared clock");
            for (const auto& [p, k] : a.coeffs) {
                if (p >= m.params.size()) fail(where + " references an undeclared parameter");
                if (k == 0) fail(where + " stores a zero coefficient");
            }
        }
    };
    for (std::size_t l = 0; l < std::min(nloc, m.invariants.size()); ++l)
        check_constraint(m.invariants[l], "invariant of " + m.locations[l]);
    for (const auto& e : m.edges) {
        if (e.source >= nloc || e.target >= nloc) {
            fail("edge endpoint is not a declared location");
            continue;
        }
        std::string where = "edge " + m.locations[e.source] + " -> " + m.locations[e.target];
        check_constraint(e.guard, where);
        for (ClockId c : e.resets)
            if (c >= m.clocks.size()) fail(where + " resets an undeclared clock");
        if (!std::is_sorted(e.resets.begin(), e.resets.end()) ||
            std::adjacent_find(e.resets.begin(), e.resets.end()) != e.resets.end())
            fail(where + " has an unsorted or repeated reset set");
    }
    if (!errors.empty()) throw ModelError(std::move(errors));
}

// ── Text format ──────────────────────────────────────────────────────────────

namespace {

enum class Tok : std::uint8_t { Ident, Number, Symbol, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

class SyntaxError : public std::exception {
public:
    explicit SyntaxError(Diagnostic d) : diag(std::move(d)) {}
    Diagnostic diag;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_ident = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
    };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t{Tok::Symbol, "", line, col};
        std::size_t start = i;
        if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && is_ident(text[j])) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(text.substr(start, j - start));
            advance(j - i);
        } else if (is_digit(c)) {
            std::size_t j = i;
            while (j < text.size() && is_digit(text[j])) ++j;
            if (j + 1 < text.size() && (text[j] == '.' || text[j] == '/') && is_digit(text[j + 1])) {
                ++j;
                while (j < text.size() && is_digit(text[j])) ++j;
            }
            t.kind = Tok::Number;
            t.text = std::string(text.substr(start, j - start));
            advance(j - i);
        } else {
            static constexpr std::string_view two[] = {"->", "<=", ">=", "==", "&&"};
            std::string_view rest = text.substr(i);
            std::size_t len = 0;
            for (auto s : two)
                if (rest.starts_with(s)) len = 2;
            if (len == 0) {
                if (std::string_view(":;,<>={}+-*").find(c) == std::string_view::npos)
                    throw SyntaxError({line, col, std::string("unexpected character '") + c + "'"});
                len = 1;
            }
            t.text = std::string(rest.substr(0, len));
            advance(len);
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

struct Name {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct RawTerm {
    Rational coeff;
    std::optional<Name> param;
};

struct RawAtom {
    Name clock;
    Rel rel = Rel::Le;
    std::vector<RawTerm> terms;
};

struct RawEdge {
    Name source, target;
    std::vector<RawAtom> guard;
    std::vector<Name> resets;
    std::string action;
};

struct RawModel {
    std::vector<Name> clocks, params, locs;
    std::vector<std::vector<RawAtom>> invariants;  // parallel to locs
    std::vector<Name> init, priv, final;
    std::vector<RawEdge> edges;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    RawModel run() {
        RawModel raw;
        while (peek().kind != Tok::End) statement(raw);
        return raw;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void error(const Token& at, const std::string& msg) const {
        std::string found = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
        throw SyntaxError({at.line, at.column, msg + ", found " + found});
    }

    bool accept(std::string_view sym) {
        if (peek().kind != Tok::Ident && peek().kind != Tok::Symbol) return false;
        if (peek().text != sym) return false;
        ++pos_;
        return true;
    }

    void expect(std::string_view sym) {
        if (!accept(sym)) error(peek(), "expected '" + std::string(sym) + "'");
    }

    Name ident(const char* what) {
        if (peek().kind != Tok::Ident) error(peek(), std::string("expected ") + what);
        Token t = next();
        return {t.text, t.line, t.column};
    }

    std::vector<Name> ident_list(const char* what, std::string_view terminator) {
        std::vector<Name> out;
        if (peek().text == terminator) return out;
        out.push_back(ident(what));
        while (accept(",")) out.push_back(ident(what));
        return out;
    }

    void statement(RawModel& raw) {
        const Token& head = peek();
        if (head.kind != Tok::Ident) error(head, "expected a declaration");
        std::string kw = head.text;
        ++pos_;
        if (kw == "clocks" || kw == "params") {
            expect(":");
            auto names = ident_list(kw == "clocks" ? "clock name" : "parameter name", ";");
            auto& dst = kw == "clocks" ? raw.clocks : raw.params;
            dst.insert(dst.end(), names.begin(), names.end());
            expect(";");
        } else if (kw == "init" || kw == "private" || kw == "final") {
            expect(":");
            Name n = ident("location name");
            (kw == "init" ? raw.init : kw == "private" ? raw.priv : raw.final).push_back(n);
            expect(";");
        } else if (kw == "loc") {
            raw.locs.push_back(ident("location name"));
            raw.invariants.emplace_back();
            if (accept("inv")) raw.invariants.back() = constraint();
            expect(";");
        } else if (kw == "edge") {
            RawEdge e;
            e.source = ident("source location");
            expect("->");
            e.target = ident("target location");
            bool seen_when = false, seen_do = false, seen_sync = false;
            while (!accept(";")) {
                const Token& t = peek();
                if (!seen_when && accept("when")) {
                    seen_when = true;
                    e.guard = constraint();
                } else if (!seen_do && accept("do")) {
                    seen_do = true;
                    expect("{");
                    e.resets = ident_list("clock name", "}");
                    expect("}");
                } else if (!seen_sync && accept("sync")) {
                    seen_sync = true;
                    e.action = ident("action name").text;
                } else {
                    error(t, "expected 'when', 'do', 'sync' or ';'");
                }
            }
            raw.edges.push_back(std::move(e));
        } else {
            --pos_;
            error(head, "expected a declaration (clocks, params, init, private, final, loc, edge)");
        }
    }

    std::vector<RawAtom> constraint() {
        std::vector<RawAtom> atoms;
        if (accept("true")) return atoms;
        atoms.push_back(atom());
        while (accept("&&")) atoms.push_back(atom());
        return atoms;
    }

    RawAtom atom() {
        RawAtom a;
        a.clock = ident("clock name");
        const Token& r = peek();
        if (accept("<=")) a.rel = Rel::Le;
        else if (accept("<")) a.rel = Rel::Lt;
        else if (accept("==") || accept("=")) a.rel = Rel::Eq;
        else if (accept(">=")) a.rel = Rel::Ge;
        else if (accept(">")) a.rel = Rel::Gt;
        else error(r, "expected a comparison operator");
        bool negate = false;
        if (accept("-")) negate = true;
        else accept("+");
        a.terms.push_back(term(negate));
        while (true) {
            if (accept("+")) a.terms.push_back(term(false));
            else if (accept("-")) a.terms.push_back(term(true));
            else break;
        }
        return a;
    }

    RawTerm term(bool negate) {
        RawTerm t;
        if (peek().kind == Tok::Number) {
            Token num = next();
            t.coeff = parse_rational(num.text);
            if (accept("*")) {
                if (!is_integer(t.coeff)) error(num, "parameter coefficients must be integers");
                t.param = ident("parameter name");
            }
        } else if (peek().kind == Tok::Ident) {
            t.coeff = 1;
            t.param = ident("parameter name");
        } else {
            error(peek(), "expected a number or parameter");
        }
        if (negate) t.coeff = -t.coeff;
        return t;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

Model resolve(const RawModel& raw) {
    std::vector<Diagnostic> errors;
    auto fail = [&](const Name& at, std::string msg) { errors.push_back({at.line, at.column, std::move(msg)}); };
    Model m;

    std::set<std::string> names;
    for (const auto& c : raw.clocks) {
        if (!names.insert(c.text).second) fail(c, "duplicate declaration of '" + c.text + "'");
        else m.clocks.push_back(c.text);
    }
    for (const auto& p : raw.params) {
        if (!names.insert(p.text).second) fail(p, "duplicate declaration of '" + p.text + "'");
        else m.params.push_back(p.text);
    }
    std::vector<std::size_t> loc_source;  // raw index per kept location
    for (std::size_t i = 0; i < raw.locs.size(); ++i) {
        const auto& l = raw.locs[i];
        if (m.find_location(l.text)) {
            fail(l, "duplicate location '" + l.text + "'");
            continue;
        }
        m.locations.push_back(l.text);
        loc_source.push_back(i);
    }

    auto location = [&](const Name& n) -> LocId {
        if (auto id = m.find_location(n.text)) return *id;
        fail(n, "undeclared location '" + n.text + "'");
        return 0;
    };
    auto role = [&](const std::vector<Name>& decls, const char* what) -> LocId {
        if (decls.empty()) {
            errors.push_back({0, 0, std::string("missing '") + what + ":' declaration"});
            return 0;
        }
        for (std::size_t i = 1; i < decls.size(); ++i)
            fail(decls[i], std::string("duplicate '") + what + ":' declaration");
        return location(decls.front());
    };
    m.init = role(raw.init, "init");
    m.priv = role(raw.priv, "private");
    m.final = role(raw.final, "final");

    auto convert = [&](const std::vector<RawAtom>& atoms) {
        Constraint c;
        for (const auto& ra : atoms) {
            AtomicConstraint a;
            a.rel = ra.rel;
            if (auto id = m.find_clock(ra.clock.text)) a.clock = *id;
            else fail(ra.clock, "undeclared clock '" + ra.clock.text + "'");
            for (const auto& t : ra.terms) {
                if (!t.param) {
                    a.constant += t.coeff;
                    continue;
                }
                auto pid = m.find_param(t.param->text);
                if (!pid) {
                    fail(*t.param, m.find_clock(t.param->text)
                                       ? "clock '" + t.param->text + "' cannot appear on the right-hand side"
                                       : "undeclared parameter '" + t.param->text + "'");
                    continue;
                }
                std::int64_t k = to_int64(numerator(t.coeff));
                if ((a.coeffs[*pid] += k) == 0) a.coeffs.erase(*pid);
            }
            c.conjuncts.push_back(std::move(a));
        }
        return c;
    };

    for (std::size_t i : loc_source) m.invariants.push_back(convert(raw.invariants[i]));
    for (const auto& re : raw.edges) {
        Edge e;
        e.source = location(re.source);
        e.target = location(re.target);
        e.guard = convert(re.guard);
        e.action = re.action;
        for (const auto& r : re.resets) {
            if (auto id = m.find_clock(r.text)) e.resets.push_back(*id);
            else fail(r, "undeclared clock '" + r.text + "' in reset set");
        }
        std::sort(e.resets.begin(), e.resets.end());
        e.resets.erase(std::unique(e.resets.begin(), e.resets.end()), e.resets.end());
        m.edges.push_back(std::move(e));
    }

    if (!errors.empty()) throw ModelError(std::move(errors));
    if (m.init == m.priv || m.init == m.final || m.priv == m.final) {
        const Name& at = !raw.final.empty() ? raw.final.front() : raw.init.front();
        throw ModelError({{at.line, at.column, "init, private and final locations must be pairwise distinct"}});
    }
    validate(m);
    return m;
}

std::string format_expr(const Model& m, const AtomicConstraint& a) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, k] : a.coeffs) {
        std::int64_t mag = k < 0 ? -k : k;
        if (first) out << (k < 0 ? "-" : "");
        else out << (k < 0 ? " - " : " + ");
        if (mag != 1) out << mag << '*';
        out << m.params[p];
        first = false;
    }
    if (first) {
        out << to_string(a.constant);
    } else if (a.constant != 0) {
        out << (a.constant < 0 ? " - " : " + ") << to_string(a.constant < 0 ? Rational(-a.constant) : a.constant);
    }
    return out.str();
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += sep;
        out += items[i];
    }
    return out;
}

}  // namespace

std::string format_atom(const Model& m, const AtomicConstraint& a) {
    return m.clocks[a.clock] + " " + std::string(to_string(a.rel)) + " " + format_expr(m, a);
}

std::string format_constraint(const Model& m, const Constraint& c) {
    if (c.is_true()) return "true";
    std::vector<std::string> parts;
    for (const auto& a : c.conjuncts) parts.push_back(format_atom(m, a));
    return join(parts, " && ");
}

Model parse_model(std::string_view text) {
    try {
        return resolve(Parser(tokenize(text)).run());
    } catch (const SyntaxError& e) {
        throw ModelError({e.diag});
    }
}

std::string serialize(const Model& m) {
    std::ostringstream out;
    if (!m.clocks.empty()) out << "clocks: " << join(m.clocks, ", ") << ";\n";
    if (!m.params.empty()) out << "params: " << join(m.params, ", ") << ";\n";
    out << "init: " << m.locations[m.init] << "; private: " << m.locations[m.priv]
        << "; final: " << m.locations[m.final] << ";\n";
    for (LocId l = 0; l < m.locations.size(); ++l) {
        out << "loc " << m.locations[l];
        if (!m.invariants[l].is_true()) out << " inv " << format_constraint(m, m.invariants[l]);
        out << ";\n";
    }
    for (const auto& e : m.edges) {
        out << "edge " << m.locations[e.source] << " -> " << m.locations[e.target];
        if (!e.guard.is_true()) out << " when " << format_constraint(m, e.guard);
        if (!e.resets.empty()) {
            std::vector<std::string> names;
            for (ClockId c : e.resets) names.push_back(m.clocks[c]);
            out << " do {" << join(names, ", ") << "}";
        }
        if (!e.action.empty()) out << " sync " << e.action;
        out << ";\n";
    }
    return out.str();
}

// ── Valuation and rescaling ──────────────────────────────────────────────────

Model apply_valuation(const Model& m, const ParamValuation& v) {
    std::vector<Rational> values(m.params.size());
    for (ParamId p = 0; p < m.params.size(); ++p) {
        auto it = v.find(m.params[p]);
        if (it == v.end()) throw std::invalid_argument("valuation is missing parameter '" + m.params[p] + "'");
        if (it->second < 0) throw std::invalid_argument("parameter '" + m.params[p] + "' must be non-negative");
        values[p] = it->second;
    }
    for (const auto& [name, value] : v)
        if (!m.find_param(name)) throw std::invalid_argument("valuation names unknown parameter '" + name + "'");

    auto fold = [&](Constraint c) {
        for (auto& a : c.conjuncts) {
            for (const auto& [p, k] : a.coeffs) a.constant += values[p] * k;
            a.coeffs.clear();
        }
        return c;
    };
    Model out = m;
    out.params.clear();
    for (auto& inv : out.invariants) inv = fold(std::move(inv));
    for (auto& e : out.edges) e.guard = fold(std::move(e.guard));
    return out;
}

RescaledModel rescale_to_integers(const Model& m, const DeltaBound& delta) {
    if (m.is_parametric()) throw std::invalid_argument("rescaling requires a parameter-free model");
    Integer scale = 1;
    auto visit = [&](const Constraint& c) {
        for (const auto& a : c.conjuncts) scale = lcm(scale, denominator(a.constant));
    };
    for (const auto& inv : m.invariants) visit(inv);
    for (const auto& e : m.edges) visit(e.guard);
    if (!delta.is_infinite()) scale = lcm(scale, denominator(delta.value()));
    if (scale > Integer(1) << 40) throw std::overflow_error("rescaling factor is too large");

    auto rescale = [&](Constraint c) {
        Constraint out;
        for (auto& a : c.conjuncts) {
            a.constant *= scale;
            if (a.constant < 0) {
                if (a.rel == Rel::Ge || a.rel == Rel::Gt) continue;  // always true for clocks
                a.rel = Rel::Lt;
                a.constant = 0;
            }
            out.conjuncts.push_back(std::move(a));
        }
        return out;
    };
    RescaledModel r{m, delta, to_int64(scale)};
    for (auto& inv : r.model.invariants) inv = rescale(std::move(inv));
    for (auto& e : r.model.edges) e.guard = rescale(std::move(e.guard));
    if (!delta.is_infinite()) r.delta = DeltaBound(delta.value() * scale);
    return r;
}

// ── L/U classification ──────────────────────────────────────────────────────

LuVerdict classify_lu(const Model& m) {
    LuVerdict verdict;
    std::vector<std::optional<BoundRole>> roles(m.params.size());

    auto scan = [&](const Constraint& c, const std::string& where) {
        for (const auto& a : c.conjuncts) {
            for (const auto& [p, k] : a.coeffs) {
                std::optional<BoundRole> use;
                bool upper_form = a.rel == Rel::Lt || a.rel == Rel::Le;
                bool lower_form = a.rel == Rel::Gt || a.rel == Rel::Ge;
                if (upper_form) use = k > 0 ? BoundRole::Upper : BoundRole::Lower;
                else if (lower_form) use = k > 0 ? BoundRole::Lower : BoundRole::Upper;
                if (!use || (roles[p] && *roles[p] != *use)) {
                    verdict.is_lu = false;
                    verdict.violation = LuViolation{where, a, p};
                    return false;
                }
                roles[p] = use;
            }
        }
        return true;
    };

    for (LocId l = 0; l < m.locations.size(); ++l)
        if (!scan(m.invariants[l], "invariant of " + m.locations[l])) return verdict;
    for (const auto& e : m.edges)
        if (!scan(e.guard, "guard of edge " + m.locations[e.source] + " -> " + m.locations[e.target])) return verdict;

    for (const auto& r : roles) verdict.roles.push_back(r.value_or(BoundRole::Lower));
    return verdict;
}

std::vector<std::int64_t> max_constants(const Model& m, const DeltaBound& delta,
                                        std::optional<ClockId> expiring_clock) {
    std::vector<std::int64_t> caps(m.clocks.size(), 0);
    auto visit = [&](const Constraint& c) {
        for (const auto& a : c.conjuncts) {
            if (a.is_parametric() || !is_integer(a.constant) || a.constant < 0)
                throw std::invalid_argument("clock bounds require a rescaled, parameter-free model");
            caps[a.clock] = std::max(caps[a.clock], to_int64(numerator(a.constant)));
        }
    };
    for (const auto& inv : m.invariants) visit(inv);
    for (const auto& e : m.edges) visit(e.guard);
    if (expiring_clock && !delta.is_infinite()) {
        if (!is_integer(delta.value())) throw std::invalid_argument("expiration bound must be rescaled first");
        caps[*expiring_clock] = std::max(caps[*expiring_clock], to_int64(numerator(delta.value())));
    }
    return caps;
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

}  // namespace opaq
