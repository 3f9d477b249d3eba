#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "jnsharp/random.hpp"
#include "jnsharp/step_function.hpp"

namespace jnsharp::testing {

/// Member i of the seeded random corpus: 2..50 cells, values on a grid in
/// [-1, 1] or [-3, 5].
inline StepFunction corpus_function(int i) {
    RandomSpec s;
    s.cells = 2 + (i * 13) % 49;
    s.seed = 0x5eedULL + static_cast<std::uint64_t>(i);
    s.value_steps = 4 + i % 7;
    if (i % 3 == 2) {
        s.value_min = Rational(-3);
        s.value_max = Rational(5);
    }
    if (i % 4 == 1) s.grid = 2L * s.cells;
    return random_step_function(s);
}

/// Plain double view of a step function, for brute-force oracles.
struct Sampled {
    std::vector<double> knots;
    std::vector<double> values;

    explicit Sampled(const StepFunction& f) {
        for (const auto& k : f.knots()) knots.push_back(k.to_double());
        for (const auto& v : f.values()) values.push_back(v.to_double());
    }

    [[nodiscard]] double operator()(double x) const {
        auto it = std::upper_bound(knots.begin() + 1, knots.end() - 1, x);
        return values[static_cast<std::size_t>(it - knots.begin() - 1)];
    }

    /// Exact-in-doubles integral over [a, b).
    [[nodiscard]] double integral(double a, double b) const {
        double s = 0;
        for (std::size_t c = 0; c < values.size(); ++c) {
            const double lo = std::max(a, knots[c]);
            const double hi = std::min(b, knots[c + 1]);
            if (lo < hi) s += values[c] * (hi - lo);
        }
        return s;
    }

    [[nodiscard]] double mean_osc(double a, double b) const {
        const double avg = integral(a, b) / (b - a);
        double s = 0;
        for (std::size_t c = 0; c < values.size(); ++c) {
            const double lo = std::max(a, knots[c]);
            const double hi = std::min(b, knots[c + 1]);
            if (lo < hi) s += std::abs(values[c] - avg) * (hi - lo);
        }
        return s / (b - a);
    }
};

/// Max of the mean oscillation over all intervals whose endpoints lie on a
/// uniform n-grid or on a knot.
inline double brute_norm(const StepFunction& f, int n) {
    const Sampled s(f);
    std::vector<double> pts = s.knots;
    const double a = s.knots.front();
    const double b = s.knots.back();
    for (int i = 1; i < n; ++i) pts.push_back(a + (b - a) * i / n);
    std::sort(pts.begin(), pts.end());
    double best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[j] > pts[i]) best = std::max(best, s.mean_osc(pts[i], pts[j]));
        }
    }
    return best;
}

}  // namespace jnsharp::testing
