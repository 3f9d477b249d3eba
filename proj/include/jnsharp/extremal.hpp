#pragma once

#include "jnsharp/enclosure.hpp"
#include "jnsharp/rational.hpp"
#include "jnsharp/step_function.hpp"

namespace jnsharp {

/// chi_[0,1/4) - chi_[3/4,1) on [0, 1): mean zero, BMO norm 1/2.
StepFunction make_extremal();

/// Omega of the extremal function on (1/4 - a, 1/4 + b), an interval that
/// contains 1/4 but stays left of 3/4: 2ab / (a + b)^2.
/// Throws RangeError unless 0 < a <= 1/4 and 0 < b < 1/2.
Rational case1_osc(const Rational& a, const Rational& b);

/// Omega of the extremal function on (1/4 - a, 3/4 + b), an interval that
/// contains both jumps: 4 s (4 t + 1) / (2a + 2b + 1)^2 with s = max(a, b),
/// t = min(a, b). For a >= b this is 4a(4b + 1) / (2a + 2b + 1)^2; the other
/// order follows from the symmetry x -> 1 - x, f -> -f.
/// Throws RangeError unless 0 < a <= 1/4 and 0 <= b <= 1/4.
Rational case2_osc(const Rational& a, const Rational& b);

struct SharpnessReport {
    Rational epsilon;
    /// 2 (1 - epsilon) ||f||_* = 1 - epsilon.
    Rational alpha;
    /// |{|f| > alpha}|, exact.
    Rational measured;
    bool measured_is_half;
    /// Tail bound at alpha with norm 1/2 and |I0| = 1.
    Enclosure bound;
    /// measured / bound = e^{-4 epsilon / e}.
    Enclosure ratio;
};

/// Measures the extremal tail at 2 (1 - epsilon) ||f||_* and compares it with
/// the tail bound. Throws RangeError unless 0 < epsilon < 1.
SharpnessReport sharpness_check(const Rational& epsilon, int bits = kDefaultPrecisionBits);

}  // namespace jnsharp
