#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jnsharp/rational.hpp"

namespace jnsharp {

/// Half-open interval [a, b) with rational endpoints, a < b.
class Interval {
public:
    /// Throws PreconditionError unless a < b.
    Interval(Rational a, Rational b);

    [[nodiscard]] const Rational& a() const { return a_; }
    [[nodiscard]] const Rational& b() const { return b_; }
    [[nodiscard]] Rational length() const { return b_ - a_; }

    [[nodiscard]] bool contains(const Rational& x) const { return a_ <= x && x < b_; }
    [[nodiscard]] bool contains(const Interval& inner) const { return a_ <= inner.a_ && inner.b_ <= b_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    Rational a_;
    Rational b_;
};

/// Finite union of half-open intervals, kept sorted, pairwise disjoint and
/// non-adjacent (adjacent or overlapping parts are merged).
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> parts);

    [[nodiscard]] const std::vector<Interval>& parts() const { return parts_; }
    [[nodiscard]] bool empty() const { return parts_.empty(); }
    [[nodiscard]] std::size_t size() const { return parts_.size(); }
    [[nodiscard]] Rational measure() const;

    [[nodiscard]] bool contains(const Rational& x) const;
    /// Set inclusion: every point of `other` lies in this union.
    [[nodiscard]] bool includes(const IntervalUnion& other) const;
    [[nodiscard]] bool disjoint_from(const IntervalUnion& other) const;

    [[nodiscard]] IntervalUnion unite(const IntervalUnion& other) const;
    [[nodiscard]] IntervalUnion intersect(const IntervalUnion& other) const;
    /// Sorted distinct endpoints of all parts.
    [[nodiscard]] std::vector<Rational> endpoints() const;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    std::vector<Interval> parts_;
};

/// Piecewise-constant function on a rational interval. Cell i is
/// [x_i, x_{i+1}) where x_0 = domain.a, x_n = domain.b and the interior knots
/// are the breakpoints. Stored in canonical form: adjacent cells never share
/// a value.
class StepFunction {
public:
    /// Throws PreconditionError when breakpoints are not strictly increasing,
    /// not interior, or values has the wrong length.
    StepFunction(Interval domain, std::vector<Rational> breakpoints, std::vector<Rational> values);

    static StepFunction constant(Interval domain, Rational value);

    [[nodiscard]] const Interval& domain() const { return domain_; }
    [[nodiscard]] const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    [[nodiscard]] const std::vector<Rational>& values() const { return values_; }
    [[nodiscard]] std::size_t cell_count() const { return values_.size(); }

    /// Knot sequence x_0 < ... < x_n including the domain endpoints.
    [[nodiscard]] const std::vector<Rational>& knots() const { return knots_; }
    [[nodiscard]] Interval cell(std::size_t i) const { return {knots_[i], knots_[i + 1]}; }
    /// Index of the cell containing x; x must lie in the domain.
    [[nodiscard]] std::size_t cell_index(const Rational& x) const;
    [[nodiscard]] const Rational& operator()(const Rational& x) const { return values_[cell_index(x)]; }

    /// Integral of f over [domain.a, knots[i]).
    [[nodiscard]] const Rational& prefix_integral(std::size_t i) const { return prefix_[i]; }

    [[nodiscard]] Rational max_value(const Interval& I) const;
    [[nodiscard]] Rational min_value(const Interval& I) const;

    [[nodiscard]] StepFunction restrict_to(const Interval& I) const;
    [[nodiscard]] StepFunction shifted(const Rational& c) const;
    [[nodiscard]] StepFunction scaled(const Rational& c) const;
    [[nodiscard]] StepFunction negated() const { return scaled(Rational(-1)); }

    friend bool operator==(const StepFunction& a, const StepFunction& b) {
        return a.domain_ == b.domain_ && a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
    }

private:
    void require_inside(const Interval& I) const;

    Interval domain_;
    std::vector<Rational> breakpoints_;
    std::vector<Rational> values_;
    std::vector<Rational> knots_;
    std::vector<Rational> prefix_;
};

enum class LevelMode { StrictlyAbove, AtOrBelow };

/// Exact integral of f over I. Throws DomainError unless I lies in f's domain.
Rational integral(const StepFunction& f, const Interval& I);

/// f_I = integral(f, I) / |I|.
Rational average(const StepFunction& f, const Interval& I);

/// {x in I : f(x) > t} or {x in I : f(x) <= t}; the two modes partition I.
IntervalUnion super_level(const StepFunction& f, const Interval& I, const Rational& t, LevelMode mode);

/// Measure of {x in domain : |f(x) - center| > alpha}.
Rational distribution(const StepFunction& f, const Rational& center, const Rational& alpha);

/// Step function built from sorted distinct knots and one value per gap.
/// Equal neighbouring values are merged.
StepFunction from_cells(std::span<const Rational> knots, std::span<const Rational> values);

/// Union of all knots of the given functions on a common domain (sorted,
/// distinct), which defines their common refinement.
std::vector<Rational> common_knots(const StepFunction& f, const StepFunction& g);

}  // namespace jnsharp
