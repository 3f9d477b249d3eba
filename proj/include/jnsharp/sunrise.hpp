#pragma once

#include "jnsharp/rational.hpp"
#include "jnsharp/step_function.hpp"

namespace jnsharp {

/// Rising-sun decomposition of g at level alpha over g's domain I0.
///
/// Returns disjoint subintervals I_j of I0 with average(g, I_j) == alpha
/// exactly and g <= alpha on every cell of I0 outside their union. The family
/// is empty when g never exceeds alpha.
///
/// Built from the antiderivative G(x) = integral from a0 to x of (g - alpha)
/// and its right-to-left running maximum M: the parts are the components of
/// {M > G}, widened through adjacent cells where g == alpha. A component
/// starting at a0 only satisfies G(b) >= G(a0); it is replaced by [a0, b')
/// with b' the largest zero of G, which exists because G(b0) <= 0.
///
/// Throws PreconditionError when average(g, I0) > alpha.
IntervalUnion sunrise_decompose(const StepFunction& g, const Rational& alpha);

}  // namespace jnsharp
