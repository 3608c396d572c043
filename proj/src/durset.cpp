#include "opaq/durset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace opaq {

using detail::Cut;
using detail::Span;
using detail::SpanList;

namespace {

Cut before(Rational v) { return Cut{std::move(v), false, false}; }
Cut after(Rational v) { return Cut{std::move(v), true, false}; }
Cut infinity_cut() { return Cut{Rational(0), false, true}; }

Span to_span(const Interval& i) {
    Cut lo = i.lo_closed ? before(i.lo) : after(i.lo);
    Cut hi = !i.hi ? infinity_cut() : i.hi_closed ? after(*i.hi) : before(*i.hi);
    return {lo, hi};
}

Interval to_interval(const Span& s) {
    Interval i;
    i.lo = s.first.value;
    i.lo_closed = !s.first.after;
    if (s.second.infinite) {
        i.hi = std::nullopt;
        i.hi_closed = false;
    } else {
        i.hi = s.second.value;
        i.hi_closed = s.second.after;
    }
    return i;
}

SpanList normalize_spans(SpanList spans) {
    spans.erase(std::remove_if(spans.begin(), spans.end(), [](const Span& s) { return !(s.first < s.second); }),
                spans.end());
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.first < b.first; });
    SpanList out;
    for (auto& s : spans) {
        if (!out.empty() && s.first <= out.back().second) {
            if (out.back().second < s.second) out.back().second = s.second;
        } else {
            out.push_back(std::move(s));
        }
    }
    return out;
}

SpanList intersect_spans(const SpanList& a, const SpanList& b) {
    SpanList out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        Cut lo = std::max(a[i].first, b[j].first);
        Cut hi = std::min(a[i].second, b[j].second);
        if (lo < hi) out.emplace_back(lo, hi);
        if (a[i].second < b[j].second) ++i;
        else ++j;
    }
    return out;
}

SpanList union_spans(SpanList a, const SpanList& b) {
    a.insert(a.end(), b.begin(), b.end());
    return normalize_spans(std::move(a));
}

// [lo, hi) minus `spans`, with `spans` already inside the window.
SpanList complement_spans(const SpanList& spans, const Cut& lo, const Cut& hi) {
    SpanList out;
    Cut cursor = lo;
    for (const auto& s : spans) {
        if (cursor < s.first) out.emplace_back(cursor, s.first);
        cursor = std::max(cursor, s.second);
    }
    if (cursor < hi) out.emplace_back(cursor, hi);
    return out;
}

SpanList clip(const SpanList& spans, const Cut& lo, const Cut& hi) {
    return intersect_spans(spans, SpanList{{lo, hi}});
}

Cut shift(Cut c, const Rational& by) {
    if (!c.infinite) c.value += by;
    return c;
}

SpanList shift(const SpanList& spans, const Rational& by) {
    SpanList out;
    for (const auto& s : spans) out.emplace_back(shift(s.first, by), shift(s.second, by));
    return out;
}

Cut scale_cut(Cut c, std::int64_t factor) {
    if (!c.infinite) c.value *= factor;
    return c;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return to_int64(lcm(Integer(a), Integer(b))); }

std::int64_t to_natural(const Rational& r) {
    if (!is_integer(r) || r < 0) throw std::logic_error("expected a natural number");
    return to_int64(numerator(r));
}

}  // namespace

// Window form: pre ⊆ [0, threshold), base ⊆ [threshold, threshold + period),
// meaning pre ∪ ⋃_k (base + k·period).
struct DurationSet::Window {
    Rational threshold;
    Rational period;
    SpanList pre;
    SpanList base;
};

DurationSet DurationSet::empty(std::int64_t scale) {
    if (scale <= 0) throw std::invalid_argument("scale must be positive");
    DurationSet s;
    s.scale_ = scale;
    return s;
}

DurationSet DurationSet::from_intervals(const std::vector<Interval>& intervals, std::int64_t scale) {
    DurationSet s = empty(scale);
    SpanList spans;
    for (const auto& i : intervals) {
        if (i.lo < 0) throw std::invalid_argument("durations are non-negative");
        spans.push_back(to_span(i));
    }
    s.initial_ = normalize_spans(std::move(spans));
    return s;
}

DurationSet DurationSet::periodic(const std::vector<Interval>& initial, std::int64_t threshold, std::int64_t period,
                                  const std::vector<Interval>& base, std::int64_t scale) {
    if (threshold < 0 || period <= 0) throw std::invalid_argument("invalid threshold or period");
    SpanList pre;
    SpanList rep;
    for (const auto& i : initial) pre.push_back(to_span(i));
    for (const auto& i : base) rep.push_back(to_span(i));
    pre = normalize_spans(std::move(pre));
    rep = normalize_spans(std::move(rep));
    const Cut t = before(Rational(threshold));
    const Cut tp = before(Rational(threshold + period));
    if (!pre.empty() && (pre.front().first < before(Rational(0)) || t < pre.back().second))
        throw std::invalid_argument("initial intervals must lie in [0, threshold)");
    if (!rep.empty() && (rep.front().first < t || tp < rep.back().second))
        throw std::invalid_argument("base intervals must lie in [threshold, threshold + period)");
    return normalize(scale, threshold, period, std::move(pre), std::move(rep));
}

DurationSet DurationSet::from_annotations(
    const std::vector<std::pair<FracClass, EventuallyPeriodicIntSet>>& entries, std::int64_t scale) {
    DurationSet acc = empty(scale);
    for (const auto& [frac, raw] : entries) {
        const EventuallyPeriodicIntSet counts = frac == FracClass::One ? raw.shifted(1) : raw;
        auto cell = [&](std::int64_t k) -> Span {
            if (frac == FracClass::Open) return {after(Rational(k)), before(Rational(k + 1))};
            return {before(Rational(k)), after(Rational(k))};
        };
        SpanList pre;
        for (auto k : counts.finite_members()) pre.push_back(cell(k));
        SpanList rep;
        Rational threshold = 0;
        Rational period = 1;
        if (!counts.is_finite()) {
            threshold = counts.threshold();
            period = counts.period();
            for (auto r : counts.residues()) rep.push_back(cell(counts.threshold() + r));
        } else if (!counts.finite_members().empty()) {
            threshold = counts.finite_members().back() + 2;
        }
        acc = set_union(acc, normalize(scale, threshold, period, normalize_spans(std::move(pre)), std::move(rep)));
    }
    return acc;
}

std::vector<Interval> DurationSet::initial() const {
    std::vector<Interval> out;
    for (const auto& s : initial_) out.push_back(to_interval(s));
    return out;
}

std::vector<Interval> DurationSet::base() const {
    std::vector<Interval> out;
    for (const auto& s : base_) out.push_back(to_interval(s));
    return out;
}

DurationSet DurationSet::rescaled(std::int64_t new_scale) const {
    if (new_scale <= 0 || new_scale % scale_ != 0) throw std::invalid_argument("new scale must be a multiple");
    const std::int64_t f = new_scale / scale_;
    DurationSet s = *this;
    s.scale_ = new_scale;
    for (auto& sp : s.initial_) sp = {scale_cut(sp.first, f), scale_cut(sp.second, f)};
    for (auto& sp : s.base_) sp = {scale_cut(sp.first, f), scale_cut(sp.second, f)};
    if (s.threshold_) {
        // The period grows by f; re-normalize to recover minimal parameters.
        return normalize(new_scale, Rational(*s.threshold_ * f), Rational(*s.period_ * f), s.initial_, s.base_);
    }
    return s;
}

Rational DurationSet::finite_extent() const {
    // Smallest integer whose unit cell and everything above it lies past every finite cut.
    Integer extent = 0;
    auto bump = [&](const Cut& c) {
        if (c.infinite) return;
        extent = std::max(extent, c.after ? floor_div(c.value) + 1 : ceil_div(c.value));
    };
    for (const auto& s : initial_) {
        bump(s.first);
        bump(s.second);
    }
    if (threshold_) extent = std::max(extent, Integer(*threshold_));
    return Rational(extent);
}

Rational DurationSet::horizon() const {
    Rational h = finite_extent();
    if (period_) h = Rational(*threshold_ + *period_);
    return h;
}

SpanList DurationSet::restrict_to(const Rational& lo, const Rational& hi) const {
    const Cut a = before(lo);
    const Cut b = before(hi);
    SpanList out = clip(initial_, a, b);
    if (threshold_) {
        const Rational t(*threshold_);
        const Rational p(*period_);
        Integer k0 = lo <= t ? Integer(0) : floor_div((lo - t) / p);
        Integer k1 = ceil_div((hi - t) / p);
        for (Integer k = k0; k <= k1; ++k) {
            SpanList copy = clip(shift(base_, p * Rational(k)), a, b);
            out.insert(out.end(), copy.begin(), copy.end());
        }
    }
    return normalize_spans(std::move(out));
}

DurationSet::Window DurationSet::window(const Rational& threshold, const Rational& period) const {
    return Window{threshold, period, restrict_to(0, threshold), restrict_to(threshold, threshold + period)};
}

DurationSet DurationSet::normalize(std::int64_t scale, Rational threshold, Rational period, SpanList pre,
                                   SpanList base) {
    DurationSet s = empty(scale);
    pre = normalize_spans(std::move(pre));
    base = normalize_spans(std::move(base));
    if (base.empty()) {
        s.initial_ = std::move(pre);
        return s;
    }

    // Periodic-only view used for period and threshold minimization.
    DurationSet rep = empty(scale);
    rep.threshold_ = to_natural(threshold);
    rep.period_ = to_natural(period);
    rep.base_ = base;

    const std::int64_t full_period = to_natural(period);
    for (std::int64_t d = 1; d < full_period; ++d) {
        if (full_period % d != 0) continue;
        if (shift(rep.restrict_to(threshold + d, threshold + d + period), Rational(-d)) == base) {
            base = rep.restrict_to(threshold, threshold + d);
            period = d;
            rep.period_ = d;
            rep.base_ = base;
            break;
        }
    }

    // Pull the threshold down while the unit cell below it already follows the pattern.
    while (threshold >= 1) {
        const Rational lower = threshold - 1;
        SpanList below = clip(pre, before(lower), before(threshold));
        SpanList pattern = shift(rep.restrict_to(lower + period, threshold + period), -period);
        if (below != pattern) break;
        threshold = lower;
        rep.threshold_ = to_natural(threshold);
        rep.base_ = union_spans(below, clip(base, before(threshold), before(threshold + period)));
        base = rep.base_;
        pre = clip(pre, before(Rational(0)), before(threshold));
    }

    const SpanList full{{before(threshold), before(threshold + period)}};
    if (base == full) {
        pre.emplace_back(before(threshold), infinity_cut());
        s.initial_ = normalize_spans(std::move(pre));
        return s;
    }
    s.initial_ = std::move(pre);
    s.threshold_ = to_natural(threshold);
    s.period_ = to_natural(period);
    s.base_ = std::move(base);
    return s;
}

namespace {

std::pair<DurationSet, DurationSet> common_scale(const DurationSet& a, const DurationSet& b) {
    std::int64_t s = lcm64(a.scale(), b.scale());
    return {a.scale() == s ? a : a.rescaled(s), b.scale() == s ? b : b.rescaled(s)};
}

}  // namespace

DurationSet set_union(const DurationSet& x, const DurationSet& y) {
    auto [a, b] = common_scale(x, y);
    Rational t = std::max(a.finite_extent(), b.finite_extent());
    Rational p = lcm64(a.period_.value_or(1), b.period_.value_or(1));
    auto wa = a.window(t, p);
    auto wb = b.window(t, p);
    return DurationSet::normalize(a.scale_, t, p, union_spans(wa.pre, wb.pre), union_spans(wa.base, wb.base));
}

DurationSet set_intersection(const DurationSet& x, const DurationSet& y) {
    auto [a, b] = common_scale(x, y);
    Rational t = std::max(a.finite_extent(), b.finite_extent());
    Rational p = lcm64(a.period_.value_or(1), b.period_.value_or(1));
    auto wa = a.window(t, p);
    auto wb = b.window(t, p);
    return DurationSet::normalize(a.scale_, t, p, intersect_spans(wa.pre, wb.pre),
                                  intersect_spans(wa.base, wb.base));
}

DurationSet set_complement(const DurationSet& a) {
    Rational t = a.finite_extent();
    Rational p = a.period_.value_or(1);
    auto w = a.window(t, p);
    return DurationSet::normalize(a.scale_, t, p, complement_spans(w.pre, before(Rational(0)), before(t)),
                                  complement_spans(w.base, before(t), before(t + p)));
}

DurationSet set_difference(const DurationSet& a, const DurationSet& b) {
    return set_intersection(a, set_complement(b));
}

bool is_subset(const DurationSet& a, const DurationSet& b) { return set_difference(a, b).is_empty(); }

bool set_equals(const DurationSet& a, const DurationSet& b) { return is_subset(a, b) && is_subset(b, a); }

bool DurationSet::contains(const Rational& duration) const {
    if (duration < 0) return false;
    Rational x = duration * scale_;
    if (threshold_ && x >= *threshold_) {
        Rational offset = x - *threshold_;
        x = Rational(*threshold_) + offset - Rational(*period_) * Rational(floor_div(offset / *period_));
    }
    const Span point{before(x), after(x)};
    auto inside = [&](const SpanList& spans) {
        return std::any_of(spans.begin(), spans.end(),
                           [&](const Span& s) { return s.first <= point.first && point.second <= s.second; });
    };
    return inside(initial_) || (threshold_ && x >= *threshold_ && inside(base_));
}

std::optional<Rational> DurationSet::witness() const {
    const SpanList& spans = initial_.empty() ? base_ : initial_;
    if (spans.empty()) return std::nullopt;
    const Span& first = spans.front();
    if (!first.first.after) return first.first.value / scale_;
    const Rational lo = first.first.value;
    Rational hi = Rational(floor_div(lo) + 1);
    if (!first.second.infinite && first.second.value < hi) hi = first.second.value;
    return (lo + hi) / 2 / scale_;
}

namespace {

std::string format_interval(const Span& s, std::int64_t scale) {
    const Interval i = to_interval(s);
    if (i.hi && *i.hi == i.lo) return "{" + opaq::to_string(i.lo / scale) + "}";
    std::string out = i.lo_closed ? "[" : "(";
    out += opaq::to_string(i.lo / scale) + ", ";
    out += i.hi ? opaq::to_string(*i.hi / scale) : std::string("inf");
    out += i.hi_closed ? "]" : ")";
    return out;
}

std::string format_spans(const SpanList& spans, std::int64_t scale) {
    std::string out;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        if (i > 0) out += " ∪ ";
        out += format_interval(spans[i], scale);
    }
    return out;
}

}  // namespace

std::string DurationSet::to_string() const {
    if (is_empty()) return "{}";
    std::string out = format_spans(initial_, scale_);
    if (threshold_) {
        if (!out.empty()) out += " ∪ ";
        std::string rep = format_spans(base_, scale_);
        if (base_.size() > 1) rep = "(" + rep + ")";
        out += rep + " + " + opaq::to_string(Rational(*period_, scale_)) + "ℕ";
    }
    return out;
}

// ── JSON ─────────────────────────────────────────────────────────────────────

namespace {

nlohmann::ordered_json interval_json(const Interval& i) {
    nlohmann::ordered_json j;
    j["lo"] = opaq::to_string(i.lo);
    j["lo_closed"] = i.lo_closed;
    j["hi"] = i.hi ? opaq::to_string(*i.hi) : std::string("inf");
    j["hi_closed"] = i.hi_closed;
    return j;
}

Interval interval_from_json(const nlohmann::json& j) {
    Interval i;
    i.lo = parse_rational(j.at("lo").get<std::string>());
    i.lo_closed = j.at("lo_closed").get<bool>();
    const auto hi = j.at("hi").get<std::string>();
    if (hi != "inf") i.hi = parse_rational(hi);
    i.hi_closed = j.at("hi_closed").get<bool>();
    return i;
}

}  // namespace

nlohmann::ordered_json to_json(const DurationSet& s) {
    nlohmann::ordered_json j;
    j["scale"] = s.scale();
    j["initial"] = nlohmann::ordered_json::array();
    for (const auto& i : s.initial()) j["initial"].push_back(interval_json(i));
    j["threshold"] = s.threshold() ? nlohmann::ordered_json(*s.threshold()) : nlohmann::ordered_json(nullptr);
    j["period"] = s.period() ? nlohmann::ordered_json(*s.period()) : nlohmann::ordered_json(nullptr);
    j["base"] = nlohmann::ordered_json::array();
    for (const auto& i : s.base()) j["base"].push_back(interval_json(i));
    return j;
}

DurationSet duration_set_from_json(const nlohmann::json& j) {
    const auto scale = j.at("scale").get<std::int64_t>();
    std::vector<Interval> initial;
    for (const auto& i : j.at("initial")) initial.push_back(interval_from_json(i));
    if (j.at("threshold").is_null()) return DurationSet::from_intervals(initial, scale);
    std::vector<Interval> base;
    for (const auto& i : j.at("base")) base.push_back(interval_from_json(i));
    return DurationSet::periodic(initial, j.at("threshold").get<std::int64_t>(), j.at("period").get<std::int64_t>(),
                                 base, scale);
}

}  // namespace opaq
