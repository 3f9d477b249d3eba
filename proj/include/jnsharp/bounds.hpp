#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "jnsharp/enclosure.hpp"
#include "jnsharp/rational.hpp"
#include "jnsharp/step_function.hpp"

namespace jnsharp {

/// C1 = e^{4/e} / 2 and C2 = 2/e in
/// |{|f - f_I0| > alpha}| <= C1 |I0| exp(-C2 alpha / ||f||_*).
struct TailBoundConstants {
    Enclosure c1;
    Enclosure c2;

    static TailBoundConstants compute(int bits = kDefaultPrecisionBits);
};

/// phi(xi) = inf over 0 < gamma < 1 of sum_k min(2 gamma^k, 1) [k <= gamma e xi < k + 1],
/// evaluated through its closed form min(1, min_{k >= 1} 2 (k / (e xi))^k).
/// Terms with k >= e xi are >= 2 and never win, so the range of k only has to
/// cover e xi. Throws PreconditionError unless xi > 0.
Enclosure phi(const Rational& xi, int bits = kDefaultPrecisionBits);
/// Same for an enclosed argument (used at xi = 4/e).
Enclosure phi(const Enclosure& xi, int bits);

/// Brute-force upper sample of phi(xi): the minimum of the defining sum over
/// gamma = i / grid, i = 1 .. grid - 1, in double arithmetic. Independent of
/// the closed form. Throws PreconditionError if grid < 10 or xi <= 0.
double phi_oracle(const Rational& xi, long grid);

/// e^{4/e - xi} / 2.
Enclosure envelope(const Enclosure& xi, int bits);

enum class EnvelopeVerdict { Strict, EqualWithinEnclosure, Undetermined, Violated };

struct EnvelopeCertificate {
    EnvelopeVerdict verdict;
    Enclosure phi;
    Enclosure envelope;
    /// envelope - phi.
    Enclosure margin;
    int bits;
};

/// Certifies phi(xi) <= e^{4/e - xi} / 2. For a rational xi (never equal to
/// the irrational 4/e) the precision is doubled until the two sides separate;
/// Undetermined is reported if they still overlap at the cap.
EnvelopeCertificate check_envelope(const Rational& xi, int bits = kDefaultPrecisionBits);
/// Enclosed xi, single precision. Overlapping sides are reported as
/// EqualWithinEnclosure, which is the expected outcome at xi = 4/e.
EnvelopeCertificate check_envelope(const Enclosure& xi, int bits);

/// 2 min((m / (e xi))^m, ((m + 1) / (e xi))^{m + 1}).
/// Throws RangeError unless m >= 1 and m <= xi <= m + 1.
Enclosure piecewise_bound(const Rational& xi, long m, int bits = kDefaultPrecisionBits);
/// Enclosed xi; throws RangeError unless it certainly lies in [m, m + 1].
Enclosure piecewise_bound(const Enclosure& xi, long m, int bits);

/// xi_m = (m + 1)^{m + 1} / (e m^m), where the two branches of
/// piecewise_bound meet. Throws RangeError if m < 1.
Enclosure xi_crossover(long m, int bits = kDefaultPrecisionBits);

/// eta(x) = (1 + 1/x)^x. All four require x >= 1 (RangeError otherwise).
Enclosure eta(const Rational& x, int bits = kDefaultPrecisionBits);
/// mu(x) = eta / (e - eta).
Enclosure mu(const Rational& x, int bits = kDefaultPrecisionBits);
/// nu(x) = (e^{eta/e} / eta)^{x + 1}.
Enclosure nu(const Rational& x, int bits = kDefaultPrecisionBits);
/// log(e / eta) - (1 - eta/e) log (1 + 1/x)^{1 + x}; nu' = nu times this.
Enclosure nu_prime_bracket(const Rational& x, int bits = kDefaultPrecisionBits);

/// (1 + 1/y)^{1 + y} for an enclosed y > 0.
Enclosure shifted_eta(const Enclosure& y, int bits);

/// c_m = 2 nu(m). Throws RangeError if m < 1.
Enclosure c_seq(long m, int bits = kDefaultPrecisionBits);

/// C1 * measure * exp(-C2 * alpha / norm_upper), rewritten as
/// (measure / 2) exp((2/e) (2 - alpha / norm_upper)) so that alpha = 2 norm_upper
/// gives exactly measure / 2. Throws PreconditionError unless alpha >= 0,
/// norm_upper > 0, measure > 0.
Enclosure tail_bound(const Rational& alpha, const Rational& norm_upper, const Rational& measure,
                     int bits = kDefaultPrecisionBits);

struct TailComparison {
    bool pass;
    Rational measured;
    Enclosure bound;
    /// bound - measured.
    Enclosure margin;
};

/// Certified measured <= tail_bound(alpha, norm_upper, measure), raising the
/// precision while undetermined (PrecisionExhausted past the cap).
TailComparison compare_tail(const Rational& measured, const Rational& alpha, const Rational& norm_upper,
                            const Rational& measure, int bits = kDefaultPrecisionBits);

/// CSV tables. Decimal fields are outward-rounded enclosure endpoints with
/// `digits` significant digits.
void write_phi_csv(std::ostream& out, const Rational& min, const Rational& max, const Rational& step, int bits,
                   int digits = 15);
void write_cm_csv(std::ostream& out, long max_m, int bits, int digits = 15);
void write_tail_csv(std::ostream& out, const StepFunction& f, const Rational& norm_upper,
                    const std::vector<Rational>& alphas, int bits, int digits = 15);

}  // namespace jnsharp
