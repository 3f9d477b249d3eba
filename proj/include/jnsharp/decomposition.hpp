#pragma once

#include <string>
#include <vector>

#include "jnsharp/rational.hpp"
#include "jnsharp/step_function.hpp"

namespace jnsharp {

inline constexpr int kDefaultMaxDepth = 64;

struct DecompositionParams {
    /// In (0, 1).
    Rational gamma;
    /// Level step; any value >= ||f||_* / (2 gamma) works.
    Rational alpha_bar;
    int max_depth = kDefaultMaxDepth;

    /// Throws PreconditionError unless 0 < gamma < 1, alpha_bar > 0 and
    /// max_depth >= 1.
    void validate() const;
};

enum class Side { E, F };

/// One application of the sunrise step: the stopping intervals selected
/// inside `parent`.
struct StoppingRecord {
    Side side;
    /// Depth of the children (the parent sits at depth - 1).
    int depth;
    Interval parent;
    /// Average of f over the parent.
    Rational parent_average;
    IntervalUnion children;
};

struct Layer {
    IntervalUnion stopping_e;
    IntervalUnion stopping_f;
    IntervalUnion e;
    IntervalUnion f;
    IntervalUnion g;
};

struct DecompositionLayers {
    DecompositionParams params;
    Interval domain;
    /// f averaged over the whole domain.
    Rational base;
    /// layers[k - 1] holds depth k >= 1. Depths past the end are empty.
    std::vector<Layer> layers;
    std::vector<StoppingRecord> visits;
    /// False iff some branch was cut by max_depth.
    bool complete = true;

    [[nodiscard]] int depth() const { return static_cast<int>(layers.size()); }
    /// G_0 is the whole domain.
    [[nodiscard]] IntervalUnion g(int k) const;
    [[nodiscard]] IntervalUnion e(int k) const;
    [[nodiscard]] IntervalUnion f(int k) const;
};

/// Iterated stopping-time decomposition.
///
/// The E side starts at the domain with base f_{I0}; at an interval I with
/// base b it takes the sunrise intervals of (f - b) on I at level alpha_bar,
/// whose averages are exactly b + alpha_bar, records E(I_j) = {f > f_{I_j}}
/// and recurses with base b + alpha_bar. A branch stops once f <= b +
/// alpha_bar on I. The F side runs the same machinery on -f and records
/// F(I_j) = {f <= f_{I_j}}.
///
/// Throws PreconditionError (naming the interval) when the selected intervals
/// inside some parent I have total length above gamma |I|, which signals
/// alpha_bar < Omega(f; I) / (2 gamma).
DecompositionLayers decompose(const StepFunction& f, const DecompositionParams& params);

/// psi = sum over k >= 0 of the indicator of G_k, an integer step function.
/// Throws PreconditionError on incomplete layers.
StepFunction psi(const DecompositionLayers& layers);

struct PointwiseReport {
    bool pass = false;
    /// min over cells of alpha_bar * psi - |f - f_{I0}|.
    Rational min_slack;
    Interval worst_cell;
};

/// Checks |f - f_{I0}| <= alpha_bar * psi on every cell of the common
/// refinement of f and psi. Throws PreconditionError on incomplete layers.
PointwiseReport verify_pointwise(const StepFunction& f, const DecompositionLayers& layers);

struct InvariantCheck {
    std::string name;
    bool pass;
    std::string detail;
};

/// Exact audit of every structural property of the decomposition: sunrise
/// averages and complement bounds, per-parent packing, cumulative measure
/// decay, the base-value ladder, nesting and disjointness of the E/F sets,
/// the |G_k| bound, the pointwise majorant and the distribution of psi.
std::vector<InvariantCheck> audit(const StepFunction& f, const DecompositionLayers& layers);

}  // namespace jnsharp
