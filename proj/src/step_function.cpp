#include "jnsharp/step_function.hpp"

#include <algorithm>

#include "jnsharp/errors.hpp"

namespace jnsharp {

// ---- Interval ---------------------------------------------------------------

Interval::Interval(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    if (!(a_ < b_)) throw PreconditionError("interval requires a < b, got [" + a_.str() + ", " + b_.str() + ")");
}

// ---- IntervalUnion ----------------------------------------------------------

IntervalUnion::IntervalUnion(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) { return x.a() < y.a(); });
    for (auto& p : parts) {
        if (!parts_.empty() && p.a() <= parts_.back().b()) {
            if (parts_.back().b() < p.b()) parts_.back() = Interval(parts_.back().a(), p.b());
        } else {
            parts_.push_back(std::move(p));
        }
    }
}

Rational IntervalUnion::measure() const {
    Rational m;
    for (const auto& p : parts_) m += p.length();
    return m;
}

bool IntervalUnion::contains(const Rational& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rational& v, const Interval& p) { return v < p.a(); });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(x);
}

bool IntervalUnion::includes(const IntervalUnion& other) const {
    return intersect(other) == other;
}

bool IntervalUnion::disjoint_from(const IntervalUnion& other) const {
    return intersect(other).empty();
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
    std::vector<Interval> out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < parts_.size() && j < other.parts_.size()) {
        const auto& p = parts_[i];
        const auto& q = other.parts_[j];
        const Rational& lo = max(p.a(), q.a());
        const Rational& hi = min(p.b(), q.b());
        if (lo < hi) out.emplace_back(lo, hi);
        if (p.b() < q.b()) {
            ++i;
        } else {
            ++j;
        }
    }
    return IntervalUnion(std::move(out));
}

std::vector<Rational> IntervalUnion::endpoints() const {
    std::vector<Rational> out;
    out.reserve(parts_.size() * 2);
    for (const auto& p : parts_) {
        out.push_back(p.a());
        out.push_back(p.b());
    }
    return out;
}

// ---- StepFunction -----------------------------------------------------------

StepFunction::StepFunction(Interval domain, std::vector<Rational> breakpoints, std::vector<Rational> values)
    : domain_(std::move(domain)) {
    if (values.size() != breakpoints.size() + 1) {
        throw PreconditionError("step function needs exactly one more value than breakpoints");
    }
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!(domain_.a() < breakpoints[i] && breakpoints[i] < domain_.b())) {
            throw PreconditionError("breakpoint " + breakpoints[i].str() + " is not interior to the domain");
        }
        if (i > 0 && !(breakpoints[i - 1] < breakpoints[i])) {
            throw PreconditionError("breakpoints must be strictly increasing");
        }
    }
    // Canonical form: drop breakpoints between equal values.
    values_.push_back(std::move(values[0]));
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (values[i + 1] == values_.back()) continue;
        breakpoints_.push_back(std::move(breakpoints[i]));
        values_.push_back(std::move(values[i + 1]));
    }
    knots_.reserve(breakpoints_.size() + 2);
    knots_.push_back(domain_.a());
    knots_.insert(knots_.end(), breakpoints_.begin(), breakpoints_.end());
    knots_.push_back(domain_.b());
    prefix_.reserve(knots_.size());
    prefix_.emplace_back(0);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        prefix_.push_back(prefix_.back() + values_[i] * (knots_[i + 1] - knots_[i]));
    }
}

StepFunction StepFunction::constant(Interval domain, Rational value) {
    return {std::move(domain), {}, {std::move(value)}};
}

std::size_t StepFunction::cell_index(const Rational& x) const {
    if (!domain_.contains(x)) throw DomainError("point " + x.str() + " outside the domain");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return static_cast<std::size_t>(it - breakpoints_.begin());
}

void StepFunction::require_inside(const Interval& I) const {
    if (!domain_.contains(I)) {
        throw DomainError("interval [" + I.a().str() + ", " + I.b().str() + ") is not inside the domain");
    }
}

Rational StepFunction::max_value(const Interval& I) const {
    require_inside(I);
    const auto first = cell_index(I.a());
    Rational m = values_[first];
    for (std::size_t c = first + 1; c < values_.size() && knots_[c] < I.b(); ++c) m = max(m, values_[c]);
    return m;
}

Rational StepFunction::min_value(const Interval& I) const {
    require_inside(I);
    const auto first = cell_index(I.a());
    Rational m = values_[first];
    for (std::size_t c = first + 1; c < values_.size() && knots_[c] < I.b(); ++c) m = min(m, values_[c]);
    return m;
}

StepFunction StepFunction::restrict_to(const Interval& I) const {
    require_inside(I);
    std::vector<Rational> bps;
    std::vector<Rational> vals;
    const auto first = cell_index(I.a());
    vals.push_back(values_[first]);
    for (std::size_t c = first + 1; c < values_.size() && knots_[c] < I.b(); ++c) {
        bps.push_back(knots_[c]);
        vals.push_back(values_[c]);
    }
    return {I, std::move(bps), std::move(vals)};
}

StepFunction StepFunction::shifted(const Rational& c) const {
    std::vector<Rational> vals;
    vals.reserve(values_.size());
    for (const auto& v : values_) vals.push_back(v + c);
    return {domain_, breakpoints_, std::move(vals)};
}

StepFunction StepFunction::scaled(const Rational& c) const {
    std::vector<Rational> vals;
    vals.reserve(values_.size());
    for (const auto& v : values_) vals.push_back(v * c);
    if (c.is_zero()) return constant(domain_, Rational(0));
    return {domain_, breakpoints_, std::move(vals)};
}

// ---- free operations --------------------------------------------------------

Rational integral(const StepFunction& f, const Interval& I) {
    if (!f.domain().contains(I)) {
        throw DomainError("interval [" + I.a().str() + ", " + I.b().str() + ") is not inside the domain");
    }
    // F(x) = prefix(cell) + v_cell * (x - x_cell), exact.
    auto antiderivative = [&f](const Rational& x) {
        if (x == f.domain().b()) return f.prefix_integral(f.cell_count());
        const auto c = f.cell_index(x);
        return f.prefix_integral(c) + f.values()[c] * (x - f.knots()[c]);
    };
    return antiderivative(I.b()) - antiderivative(I.a());
}

Rational average(const StepFunction& f, const Interval& I) { return integral(f, I) / I.length(); }

IntervalUnion super_level(const StepFunction& f, const Interval& I, const Rational& t, LevelMode mode) {
    if (!f.domain().contains(I)) {
        throw DomainError("interval [" + I.a().str() + ", " + I.b().str() + ") is not inside the domain");
    }
    std::vector<Interval> parts;
    const auto& k = f.knots();
    for (std::size_t c = f.cell_index(I.a()); c < f.cell_count() && k[c] < I.b(); ++c) {
        const bool above = f.values()[c] > t;
        if (above != (mode == LevelMode::StrictlyAbove)) continue;
        parts.emplace_back(max(k[c], I.a()), min(k[c + 1], I.b()));
    }
    return IntervalUnion(std::move(parts));
}

Rational distribution(const StepFunction& f, const Rational& center, const Rational& alpha) {
    Rational m;
    for (std::size_t c = 0; c < f.cell_count(); ++c) {
        if (abs(f.values()[c] - center) > alpha) m += f.knots()[c + 1] - f.knots()[c];
    }
    return m;
}

StepFunction from_cells(std::span<const Rational> knots, std::span<const Rational> values) {
    if (knots.size() < 2 || values.size() + 1 != knots.size()) {
        throw PreconditionError("from_cells: need n+1 knots for n values");
    }
    Interval dom(knots.front(), knots.back());
    std::vector<Rational> bps(knots.begin() + 1, knots.end() - 1);
    return {dom, std::move(bps), std::vector<Rational>(values.begin(), values.end())};
}

std::vector<Rational> common_knots(const StepFunction& f, const StepFunction& g) {
    if (!(f.domain() == g.domain())) throw PreconditionError("common_knots: domains differ");
    std::vector<Rational> out;
    std::merge(f.knots().begin(), f.knots().end(), g.knots().begin(), g.knots().end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace jnsharp
