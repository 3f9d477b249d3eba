#include "jnsharp/sunrise.hpp"

#include <stdexcept>
#include <vector>

#include "jnsharp/errors.hpp"

namespace jnsharp {

namespace {

// Piecewise-linear antiderivative of g - alpha, exact at every point.
class Antiderivative {
public:
    Antiderivative(const StepFunction& g, const Rational& alpha) : g_(g) {
        slopes_.reserve(g.cell_count());
        at_knot_.reserve(g.cell_count() + 1);
        at_knot_.emplace_back(0);
        for (std::size_t c = 0; c < g.cell_count(); ++c) {
            slopes_.push_back(g.values()[c] - alpha);
            at_knot_.push_back(at_knot_.back() + slopes_.back() * (g.knots()[c + 1] - g.knots()[c]));
        }
    }

    [[nodiscard]] const Rational& knot(std::size_t i) const { return at_knot_[i]; }
    [[nodiscard]] const Rational& slope(std::size_t c) const { return slopes_[c]; }

    [[nodiscard]] Rational operator()(const Rational& x) const {
        if (x == g_.domain().b()) return at_knot_.back();
        const auto c = g_.cell_index(x);
        return at_knot_[c] + slopes_[c] * (x - g_.knots()[c]);
    }

    // Largest x with G(x) == 0; requires G(b0) <= 0 and G(a0) == 0.
    [[nodiscard]] Rational last_zero() const {
        const auto& k = g_.knots();
        for (std::size_t c = g_.cell_count(); c-- > 0;) {
            if (at_knot_[c + 1].is_zero()) return k[c + 1];
            if (at_knot_[c].sign() >= 0) return k[c] - at_knot_[c] / slopes_[c];
        }
        return k.front();
    }

private:
    const StepFunction& g_;
    std::vector<Rational> slopes_;
    std::vector<Rational> at_knot_;
};

}  // namespace

IntervalUnion sunrise_decompose(const StepFunction& g, const Rational& alpha) {
    const Interval& dom = g.domain();
    if (average(g, dom) > alpha) {
        throw PreconditionError("sunrise: average " + average(g, dom).str() + " exceeds level " + alpha.str());
    }
    const Antiderivative G(g, alpha);
    const auto& k = g.knots();
    const std::size_t n = g.cell_count();

    // Shadow {x : max_{y >= x} G(y) > G(x)}, swept right to left.
    std::vector<Interval> shadow;
    Rational running_max = G.knot(n);
    for (std::size_t c = n; c-- > 0;) {
        const Rational& left = G.knot(c);
        const Rational& right = G.knot(c + 1);
        if (G.slope(c).sign() > 0) {
            shadow.emplace_back(k[c], k[c + 1]);
            continue;
        }
        if (left < running_max) {
            shadow.emplace_back(k[c], k[c + 1]);
            continue;
        }
        if (right < running_max) {
            // G climbs leftwards through running_max inside the cell.
            const Rational cross = k[c] + (running_max - left) / G.slope(c);
            shadow.emplace_back(cross, k[c + 1]);
        }
        running_max = left;
    }
    const IntervalUnion shade(std::move(shadow));
    if (shade.empty()) return {};

    // Widen through flat cells (g == alpha) that touch a shadow component.
    std::vector<Interval> widened = shade.parts();
    for (std::size_t c = 0; c < n; ++c) {
        if (G.slope(c).is_zero()) widened.push_back(g.cell(c));
    }
    const IntervalUnion grown(std::move(widened));
    std::vector<Interval> parts;
    for (const auto& comp : grown.parts()) {
        if (!shade.intersect(IntervalUnion({comp})).empty()) parts.push_back(comp);
    }

    if (!parts.empty() && parts.front().a() == dom.a() && !G(parts.front().b()).is_zero()) {
        const Rational end = G.last_zero();
        std::vector<Interval> repaired{Interval(dom.a(), end)};
        for (const auto& p : parts) {
            if (end <= p.a()) repaired.push_back(p);
        }
        parts = std::move(repaired);
    }

    IntervalUnion out(std::move(parts));
    for (const auto& p : out.parts()) {
        if (G(p.a()) != G(p.b())) {
            throw std::logic_error("sunrise: part [" + p.a().str() + ", " + p.b().str() + ") misses the level");
        }
    }
    return out;
}

}  // namespace jnsharp
