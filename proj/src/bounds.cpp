#include "jnsharp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jnsharp/errors.hpp"

namespace jnsharp {

TailBoundConstants TailBoundConstants::compute(int bits) {
    const int work = bits + 16;
    const Enclosure e = e_const(work);
    const Enclosure c1 = exp(Enclosure(4L, work) / e) / Enclosure(2L, work);
    const Enclosure c2 = Enclosure(2L, work) / e;
    return {c1.with_bits(bits), c2.with_bits(bits)};
}

namespace {

constexpr int kGuard = 16;

long floor_long(const BigFloat& x) { return static_cast<long>(std::floor(mpfr_get_d(x.get(), MPFR_RNDD))); }

// 2 (k / (e xi))^k
Enclosure phi_term(long k, const Enclosure& exi) { return Enclosure(2L, exi.bits()) * pow(Enclosure(k, exi.bits()) / exi, k); }

}  // namespace

Enclosure phi(const Enclosure& xi, int bits) {
    if (xi.sign() != Sign::Positive) throw PreconditionError("phi: xi must be positive");
    const int work = std::max(bits, xi.bits()) + kGuard;
    const Enclosure x = xi.with_bits(work);
    const Enclosure exi = e_const(work) * x;
    // k log(k / (e xi)) is convex in k with its minimum at k = xi, so only the
    // integers next to xi can give the smallest term.
    const long first = std::max(1L, floor_long(x.lo()));
    const long last = std::max(1L, floor_long(x.hi()) + 1);
    Enclosure best(1L, work);
    for (long k = first; k <= last; ++k) best = min(best, phi_term(k, exi));
    return best.with_bits(bits);
}

Enclosure phi(const Rational& xi, int bits) {
    if (xi.sign() <= 0) throw PreconditionError("phi: xi must be positive, got " + xi.str());
    return phi(Enclosure(xi, bits + kGuard), bits);
}

double phi_oracle(const Rational& xi, long grid) {
    if (grid < 10) throw PreconditionError("phi_oracle: grid size must be >= 10");
    if (xi.sign() <= 0) throw PreconditionError("phi_oracle: xi must be positive");
    const double exi = std::exp(1.0) * xi.to_double();
    double best = std::numeric_limits<double>::infinity();
    for (long i = 1; i < grid; ++i) {
        const double gamma = static_cast<double>(i) / static_cast<double>(grid);
        const double k = std::floor(gamma * exi);
        best = std::min(best, std::min(2.0 * std::pow(gamma, k), 1.0));
    }
    return best;
}

Enclosure envelope(const Enclosure& xi, int bits) {
    const int work = std::max(bits, xi.bits()) + kGuard;
    const Enclosure four_over_e = Enclosure(4L, work) / e_const(work);
    return (exp(four_over_e - xi.with_bits(work)) / Enclosure(2L, work)).with_bits(bits);
}

namespace {

EnvelopeCertificate certify(const Enclosure& xi, int bits) {
    Enclosure p = phi(xi, bits);
    Enclosure env = envelope(xi, bits);
    Enclosure margin = env - p;
    EnvelopeVerdict v = EnvelopeVerdict::EqualWithinEnclosure;
    if (certainly_less(p, env)) {
        v = EnvelopeVerdict::Strict;
    } else if (certainly_less(env, p)) {
        v = EnvelopeVerdict::Violated;
    }
    return {v, std::move(p), std::move(env), std::move(margin), bits};
}

}  // namespace

EnvelopeCertificate check_envelope(const Enclosure& xi, int bits) { return certify(xi, bits); }

EnvelopeCertificate check_envelope(const Rational& xi, int bits) {
    if (xi.sign() <= 0) throw PreconditionError("check_envelope: xi must be positive");
    for (int b = bits;; b *= 2) {
        auto cert = certify(Enclosure(xi, b + kGuard), b);
        if (cert.verdict != EnvelopeVerdict::EqualWithinEnclosure) return cert;
        if (b * 2 > kMaxPrecisionBits) {
            cert.verdict = EnvelopeVerdict::Undetermined;
            return cert;
        }
    }
}

Enclosure piecewise_bound(const Enclosure& xi, long m, int bits) {
    if (m < 1) throw RangeError("piecewise_bound: m must be >= 1");
    const int work = std::max(bits, xi.bits()) + kGuard;
    const Enclosure x = xi.with_bits(work);
    if (!certainly_less_equal(Enclosure(m, work), x) || !certainly_less_equal(x, Enclosure(m + 1, work))) {
        throw RangeError("piecewise_bound: xi must lie in [" + std::to_string(m) + ", " + std::to_string(m + 1) +
                         "]");
    }
    const Enclosure exi = e_const(work) * x;
    return min(phi_term(m, exi), phi_term(m + 1, exi)).with_bits(bits);
}

Enclosure piecewise_bound(const Rational& xi, long m, int bits) {
    if (m < 1) throw RangeError("piecewise_bound: m must be >= 1");
    if (xi < Rational(m) || Rational(m + 1) < xi) {
        throw RangeError("piecewise_bound: xi = " + xi.str() + " outside [" + std::to_string(m) + ", " +
                         std::to_string(m + 1) + "]");
    }
    return piecewise_bound(Enclosure(xi, bits + kGuard), m, bits);
}

Enclosure xi_crossover(long m, int bits) {
    if (m < 1) throw RangeError("xi_crossover: m must be >= 1");
    const int work = bits + kGuard;
    // (m+1)^{m+1} / m^m = (m+1) (1 + 1/m)^m; the power goes through exp/log
    // to avoid huge exact integers for large m.
    const Enclosure ratio = Enclosure(m + 1, work) * eta(Rational(m), work);
    return (ratio / e_const(work)).with_bits(bits);
}

namespace {

void require_x(const Rational& x, const char* what) {
    if (x < Rational(1)) throw RangeError(std::string(what) + ": x must be >= 1, got " + x.str());
}

// x log(1 + 1/x) for x >= 1.
Enclosure x_log1p_inv(const Enclosure& x) { return x * log(Enclosure(1L, x.bits()) + Enclosure(1L, x.bits()) / x); }

}  // namespace

Enclosure eta(const Rational& x, int bits) {
    require_x(x, "eta");
    const int work = bits + kGuard;
    if (x.is_integer() && x <= Rational(64)) {
        const long n = x.numerator().get_si();
        return Enclosure(pow(Rational(n + 1, n), n), bits);
    }
    return exp(x_log1p_inv(Enclosure(x, work))).with_bits(bits);
}

Enclosure mu(const Rational& x, int bits) {
    require_x(x, "mu");
    const int work = bits + kGuard;
    const Enclosure h = eta(x, work);
    return (h / (e_const(work) - h)).with_bits(bits);
}

namespace {

// eta/e - log eta, the logarithm of e^{eta/e}/eta.
Enclosure nu_log_base(const Enclosure& h) { return h / e_const(h.bits()) - log(h); }

}  // namespace

Enclosure nu(const Rational& x, int bits) {
    require_x(x, "nu");
    const int work = bits + kGuard;
    const Enclosure h = eta(x, work);
    return exp(Enclosure(x + Rational(1), work) * nu_log_base(h)).with_bits(bits);
}

Enclosure nu_prime_bracket(const Rational& x, int bits) {
    require_x(x, "nu_prime_bracket");
    const int work = bits + kGuard;
    const Enclosure one(1L, work);
    const Enclosure h = eta(x, work);
    const Enclosure xe(x, work);
    const Enclosure log_term = (xe + one) * log(one + one / xe);
    return (one - log(h) - (one - h / e_const(work)) * log_term).with_bits(bits);
}

Enclosure shifted_eta(const Enclosure& y, int bits) {
    if (y.sign() != Sign::Positive) throw PreconditionError("shifted_eta: y must be positive");
    const int work = std::max(bits, y.bits()) + kGuard;
    const Enclosure one(1L, work);
    const Enclosure yy = y.with_bits(work);
    return exp((one + yy) * log(one + one / yy)).with_bits(bits);
}

Enclosure c_seq(long m, int bits) {
    if (m < 1) throw RangeError("c_seq: m must be >= 1");
    const int work = bits + kGuard;
    return (Enclosure(2L, work) * nu(Rational(m), work)).with_bits(bits);
}

Enclosure tail_bound(const Rational& alpha, const Rational& norm_upper, const Rational& measure, int bits) {
    if (alpha.sign() < 0) throw PreconditionError("tail_bound: alpha must be >= 0");
    if (norm_upper.sign() <= 0) throw PreconditionError("tail_bound: norm_upper must be positive");
    if (measure.sign() <= 0) throw PreconditionError("tail_bound: measure must be positive");
    const int work = bits + kGuard;
    const Rational shift = Rational(2) - alpha / norm_upper;
    const Enclosure exponent = Enclosure(2L, work) / e_const(work) * Enclosure(shift, work);
    return (Enclosure(measure / Rational(2), work) * exp(exponent)).with_bits(bits);
}

TailComparison compare_tail(const Rational& measured, const Rational& alpha, const Rational& norm_upper,
                            const Rational& measure, int bits) {
    for (int b = bits; b <= kMaxPrecisionBits; b *= 2) {
        Enclosure bound = tail_bound(alpha, norm_upper, measure, b);
        const Enclosure m(measured, b);
        Enclosure margin = bound - m;
        if (certainly_less_equal(m, bound)) return {true, measured, std::move(bound), std::move(margin)};
        if (certainly_less(bound, m)) return {false, measured, std::move(bound), std::move(margin)};
    }
    throw PrecisionExhausted("compare_tail: measured " + measured.str() + " against the bound at alpha " +
                             alpha.str());
}

void write_phi_csv(std::ostream& out, const Rational& min, const Rational& max, const Rational& step, int bits,
                   int digits) {
    if (step.sign() <= 0) throw PreconditionError("phi sweep: step must be positive");
    if (min.sign() <= 0 || max < min) throw PreconditionError("phi sweep: need 0 < min <= max");
    out << "xi,phi_lo,phi_hi,envelope_hi\n";
    for (Rational xi = min; xi <= max; xi += step) {
        const Enclosure p = phi(xi, bits);
        const Enclosure env = envelope(Enclosure(xi, bits + kGuard), bits);
        out << xi.str() << ',' << p.lo_str(digits) << ',' << p.hi_str(digits) << ',' << env.hi_str(digits) << '\n';
    }
}

void write_cm_csv(std::ostream& out, long max_m, int bits, int digits) {
    if (max_m < 1) throw PreconditionError("cm table: max_m must be >= 1");
    out << "m,c_lo,c_hi\n";
    for (long m = 1; m <= max_m; ++m) {
        const Enclosure c = c_seq(m, bits);
        out << m << ',' << c.lo_str(digits) << ',' << c.hi_str(digits) << '\n';
    }
}

void write_tail_csv(std::ostream& out, const StepFunction& f, const Rational& norm_upper,
                    const std::vector<Rational>& alphas, int bits, int digits) {
    const Interval& dom = f.domain();
    const Rational center = average(f, dom);
    out << "alpha,measured,bound_lo,bound_hi\n";
    for (const auto& a : alphas) {
        const Rational measured = distribution(f, center, a);
        const Enclosure b = tail_bound(a, norm_upper, dom.length(), bits);
        out << a.str() << ',' << measured.str() << ',' << b.lo_str(digits) << ',' << b.hi_str(digits) << '\n';
    }
}

}  // namespace jnsharp
