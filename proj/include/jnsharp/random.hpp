#pragma once

#include <cstdint>

#include "jnsharp/rational.hpp"
#include "jnsharp/step_function.hpp"

namespace jnsharp {

/// Parameters of the seeded random step-function generator.
struct RandomSpec {
    int cells = 10;
    std::uint64_t seed = 0;
    Rational domain_a{0};
    Rational domain_b{1};
    Rational value_min{-1};
    Rational value_max{1};
    /// Values are value_min + (value_max - value_min) * r / value_steps.
    long value_steps = 8;
    /// Breakpoints lie on the grid domain_a + |domain| * k / grid; 0 means 4 * cells.
    long grid = 0;
};

/// Deterministic given the parameters (std::mt19937_64 output is fixed by the
/// standard; no library distributions are used). Produces exactly
/// spec.cells cells: neighbouring values always differ.
/// Throws PreconditionError when cells < 1, the grid is too coarse, or
/// value_steps < 1.
StepFunction random_step_function(const RandomSpec& spec);

}  // namespace jnsharp
