#include "jnsharp/extremal.hpp"

#include "jnsharp/bounds.hpp"
#include "jnsharp/errors.hpp"

namespace jnsharp {

StepFunction make_extremal() {
    return {Interval(0, 1), {Rational(1, 4), Rational(3, 4)}, {1, 0, -1}};
}

Rational case1_osc(const Rational& a, const Rational& b) {
    if (!(a.sign() > 0 && a <= Rational(1, 4) && b.sign() > 0 && b < Rational(1, 2))) {
        throw RangeError("case1_osc: need 0 < a <= 1/4 and 0 < b < 1/2, got a = " + a.str() + ", b = " + b.str());
    }
    const Rational s = a + b;
    return Rational(2) * a * b / (s * s);
}

Rational case2_osc(const Rational& a, const Rational& b) {
    const Rational quarter(1, 4);
    if (!(a.sign() > 0 && a <= quarter && b.sign() >= 0 && b <= quarter)) {
        throw RangeError("case2_osc: need 0 < a <= 1/4 and 0 <= b <= 1/4, got a = " + a.str() + ", b = " + b.str());
    }
    const Rational d = Rational(2) * (a + b) + Rational(1);
    return Rational(4) * max(a, b) * (Rational(4) * min(a, b) + Rational(1)) / (d * d);
}

SharpnessReport sharpness_check(const Rational& epsilon, int bits) {
    if (!(epsilon.sign() > 0 && epsilon < Rational(1))) {
        throw RangeError("sharpness_check: epsilon must lie in (0, 1), got " + epsilon.str());
    }
    const StepFunction f = make_extremal();
    const Rational norm(1, 2);
    const Rational alpha = Rational(2) * (Rational(1) - epsilon) * norm;
    const Rational measured = distribution(f, average(f, f.domain()), alpha);
    Enclosure bound = tail_bound(alpha, norm, f.domain().length(), bits);
    Enclosure ratio = Enclosure(measured, bits) / bound;
    return {epsilon, alpha, measured, measured == Rational(1, 2), std::move(bound), std::move(ratio)};
}

}  // namespace jnsharp
