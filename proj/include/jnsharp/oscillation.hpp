#pragma once

#include "jnsharp/enclosure.hpp"
#include "jnsharp/rational.hpp"
#include "jnsharp/step_function.hpp"

namespace jnsharp {

/// Mean oscillation (1/|I|) * integral over I of |f - f_I|, exact.
Rational mean_osc(const StepFunction& f, const Interval& I);

/// (2/|I|) * integral over E(I) = {f > f_I} of (f - f_I). Equal to mean_osc.
Rational positive_part_osc(const StepFunction& f, const Interval& I);

/// (2/|I|) * integral over F(I) = {f <= f_I} of (f_I - f). Equal to mean_osc.
Rational negative_part_osc(const StepFunction& f, const Interval& I);

/// Certified value of the BMO norm sup over subintervals I of Omega(f; I).
struct BmoEnclosure {
    /// Omega(f; witness), attained exactly.
    Rational attained;
    /// Certified upper bound for the supremum.
    Rational upper;
    Interval witness;
    Rational tolerance;

    /// [attained, upper] as an outward-rounded enclosure.
    [[nodiscard]] Enclosure bounds(int bits = kDefaultPrecisionBits) const;
};

/// Computes the supremum of the mean oscillation over all subintervals of the
/// domain.
///
/// For a pair of cells (i, j) holding the left and right endpoints, write p
/// and q for the lengths of I inside cells i and j. On each region of the
/// (p, q) box where the set of cells with value above f_I is fixed, Omega is
/// 2 N(p, q) / L(p, q)^2 with N bilinear and L = p + q + const. Such a
/// function has no interior critical point off the line dN/dp = dN/dq and is
/// a quadratic over a squared linear along any segment, whose critical point
/// is rational. The supremum over the region is therefore the maximum over a
/// finite set of rational candidates: segment endpoints and segment critical
/// points of the region's edges and of that line. The result is exact:
/// upper == attained.
///
/// Throws PreconditionError if tolerance <= 0.
BmoEnclosure bmo_norm(const StepFunction& f, const Rational& tolerance);

}  // namespace jnsharp
