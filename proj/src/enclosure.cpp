#include "jnsharp/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jnsharp {

// ---- BigFloat -------------------------------------------------------------

BigFloat::BigFloat(int bits) { mpfr_init2(v_, bits); }

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    // Steal the limbs and leave `o` as a released shell.
    *v_ = *o.v_;
    o.live_ = false;
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        if (live_) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        } else {
            mpfr_init2(v_, mpfr_get_prec(o.v_));
            live_ = true;
        }
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) {
        if (live_) mpfr_clear(v_);
        *v_ = *o.v_;
        live_ = true;
        o.live_ = false;
    }
    return *this;
}

BigFloat::~BigFloat() {
    if (live_) mpfr_clear(v_);
}

// ---- Enclosure ------------------------------------------------------------

namespace {

int join_bits(const Enclosure& a, const Enclosure& b) { return std::max(a.bits(), b.bits()); }

void check_bits(int bits) {
    if (bits < 2 || bits > (1 << 20)) throw DomainError("unsupported precision: " + std::to_string(bits));
}

std::string render(mpfr_srcptr v, int digits, bool round_up) {
    char* buf = nullptr;
    const int prec = std::max(digits, 1) - 1;
    const int n = round_up ? mpfr_asprintf(&buf, "%.*RUe", prec, v) : mpfr_asprintf(&buf, "%.*RDe", prec, v);
    if (n < 0 || buf == nullptr) throw std::runtime_error("mpfr_asprintf failed");
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

}  // namespace

Enclosure::Enclosure(Uninit, int bits) : lo_(bits), hi_(bits), bits_(bits) {}

Enclosure::Enclosure(BigFloat lo, BigFloat hi, int bits)
    : lo_(std::move(lo)), hi_(std::move(hi)), bits_(bits) {}

Enclosure::Enclosure(long v, int bits) : Enclosure(Uninit{}, bits) {
    check_bits(bits);
    mpfr_set_si(lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(hi_.get(), v, MPFR_RNDU);
}

Enclosure::Enclosure(const Rational& q, int bits) : Enclosure(Uninit{}, bits) {
    check_bits(bits);
    mpfr_set_q(lo_.get(), q.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_.get(), q.raw().get_mpq_t(), MPFR_RNDU);
}

Enclosure Enclosure::from_decimal(const std::string& lo, const std::string& hi, int bits) {
    check_bits(bits);
    Enclosure out(Enclosure::Uninit{}, bits);
    if (mpfr_set_str(out.lo_.get(), lo.c_str(), 10, MPFR_RNDD) != 0 ||
        mpfr_set_str(out.hi_.get(), hi.c_str(), 10, MPFR_RNDU) != 0) {
        throw ParseError("invalid decimal enclosure endpoint");
    }
    if (mpfr_cmp(out.lo_.get(), out.hi_.get()) > 0) throw ParseError("enclosure with lo > hi");
    return out;
}

std::string Enclosure::lo_str(int digits) const { return render(lo_.get(), digits, false); }
std::string Enclosure::hi_str(int digits) const { return render(hi_.get(), digits, true); }

double Enclosure::lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double Enclosure::hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
double Enclosure::mid_double() const { return 0.5 * (mpfr_get_d(lo_.get(), MPFR_RNDN) + mpfr_get_d(hi_.get(), MPFR_RNDN)); }

double Enclosure::width() const {
    BigFloat w(bits_);
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool Enclosure::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_.get(), q.raw().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.raw().get_mpq_t()) >= 0;
}

bool Enclosure::contains(const Enclosure& inner) const {
    return mpfr_cmp(lo_.get(), inner.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), inner.hi_.get()) >= 0;
}

Sign Enclosure::sign() const {
    if (mpfr_sgn(lo_.get()) > 0) return Sign::Positive;
    if (mpfr_sgn(hi_.get()) < 0) return Sign::Negative;
    return Sign::Undetermined;
}

Enclosure Enclosure::with_bits(int bits) const {
    check_bits(bits);
    Enclosure out(Enclosure::Uninit{}, bits);
    mpfr_set(out.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_set(out.hi_.get(), hi_.get(), MPFR_RNDU);
    return out;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    Enclosure out(Enclosure::Uninit{}, join_bits(a, b));
    mpfr_add(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return out;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    Enclosure out(Enclosure::Uninit{}, join_bits(a, b));
    mpfr_sub(out.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(out.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return out;
}

Enclosure operator-(const Enclosure& a) {
    Enclosure out(Enclosure::Uninit{}, a.bits_);
    mpfr_neg(out.lo_.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_neg(out.hi_.get(), a.lo_.get(), MPFR_RNDU);
    return out;
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Endpoint products/quotients: min of the four rounded down, max of the four
// rounded up.
void corner_hull(mpfr_ptr lo, mpfr_ptr hi, mpfr_srcptr a0, mpfr_srcptr a1, mpfr_srcptr b0, mpfr_srcptr b1,
                 BinaryOp op, int bits) {
    const mpfr_srcptr as[2] = {a0, a1};
    const mpfr_srcptr bs[2] = {b0, b1};
    BigFloat t(bits);
    bool first = true;
    for (auto x : as) {
        for (auto y : bs) {
            op(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), lo) < 0) mpfr_set(lo, t.get(), MPFR_RNDD);
            op(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), hi) > 0) mpfr_set(hi, t.get(), MPFR_RNDU);
            first = false;
        }
    }
}

}  // namespace

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    const int bits = join_bits(a, b);
    Enclosure out(Enclosure::Uninit{}, bits);
    corner_hull(out.lo_.get(), out.hi_.get(), a.lo_.get(), a.hi_.get(), b.lo_.get(), b.hi_.get(), mpfr_mul, bits);
    return out;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.sign() == Sign::Undetermined) throw DomainError("division by an enclosure containing zero");
    const int bits = join_bits(a, b);
    Enclosure out(Enclosure::Uninit{}, bits);
    corner_hull(out.lo_.get(), out.hi_.get(), a.lo_.get(), a.hi_.get(), b.lo_.get(), b.hi_.get(), mpfr_div, bits);
    return out;
}

Enclosure exp(const Enclosure& x) {
    Enclosure out(Enclosure::Uninit{}, x.bits_);
    mpfr_exp(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
    mpfr_exp(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
    if (mpfr_inf_p(out.hi_.get()) || mpfr_inf_p(out.lo_.get()) || mpfr_nan_p(out.hi_.get())) {
        throw OverflowError("exp overflow");
    }
    return out;
}

Enclosure log(const Enclosure& x) {
    if (mpfr_sgn(x.lo_.get()) <= 0) throw DomainError("log of an enclosure not certainly positive");
    Enclosure out(Enclosure::Uninit{}, x.bits_);
    mpfr_log(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
    mpfr_log(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
    return out;
}

Enclosure pow(const Enclosure& base, long exponent) {
    if (exponent < 0) return Enclosure(1L, base.bits_) / pow(base, -exponent);
    Enclosure out(Enclosure::Uninit{}, base.bits_);
    const bool even = exponent % 2 == 0;
    const auto e = exponent;
    if (mpfr_sgn(base.lo_.get()) >= 0 || !even) {
        // Monotone increasing on the whole enclosure.
        mpfr_pow_si(out.lo_.get(), base.lo_.get(), e, MPFR_RNDD);
        mpfr_pow_si(out.hi_.get(), base.hi_.get(), e, MPFR_RNDU);
    } else if (mpfr_sgn(base.hi_.get()) <= 0) {
        mpfr_pow_si(out.lo_.get(), base.hi_.get(), e, MPFR_RNDD);
        mpfr_pow_si(out.hi_.get(), base.lo_.get(), e, MPFR_RNDU);
    } else {
        BigFloat a(base.bits_);
        BigFloat b(base.bits_);
        mpfr_pow_si(a.get(), base.lo_.get(), e, MPFR_RNDU);
        mpfr_pow_si(b.get(), base.hi_.get(), e, MPFR_RNDU);
        mpfr_set_zero(out.lo_.get(), 1);
        mpfr_max(out.hi_.get(), a.get(), b.get(), MPFR_RNDU);
    }
    if (mpfr_inf_p(out.hi_.get()) || mpfr_inf_p(out.lo_.get())) throw OverflowError("pow overflow");
    return out;
}

Enclosure pow(const Enclosure& base, const Enclosure& exponent) {
    if (base.sign() != Sign::Positive) throw DomainError("pow requires a certainly positive base");
    return exp(exponent * log(base));
}

Enclosure min(const Enclosure& a, const Enclosure& b) {
    Enclosure out(Enclosure::Uninit{}, join_bits(a, b));
    mpfr_min(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_min(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return out;
}

Enclosure max(const Enclosure& a, const Enclosure& b) {
    Enclosure out(Enclosure::Uninit{}, join_bits(a, b));
    mpfr_max(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return out;
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
    Enclosure out(Enclosure::Uninit{}, join_bits(a, b));
    mpfr_min(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return out;
}

Enclosure e_const(int bits) { return exp(Enclosure(1L, bits)); }

namespace {

// Extra working bits so that the input rounding does not dominate the width
// of the final result.
constexpr int kGuardBits = 16;

void check_precision_arg(int bits) {
    if (bits < kMinPrecisionBits) {
        throw PreconditionError("precision_bits must be >= " + std::to_string(kMinPrecisionBits));
    }
}

}  // namespace

Enclosure exp_enclosure(const Rational& x, int bits) {
    check_precision_arg(bits);
    return exp(Enclosure(x, bits + kGuardBits)).with_bits(bits);
}

Enclosure exp_enclosure(const Enclosure& x, int bits) {
    check_precision_arg(bits);
    return exp(x.with_bits(std::max(bits, x.bits()))).with_bits(bits);
}

Enclosure log_enclosure(const Rational& x, int bits) {
    check_precision_arg(bits);
    if (x.sign() <= 0) throw DomainError("log of a non-positive rational");
    return log(Enclosure(x, bits + kGuardBits)).with_bits(bits);
}

Enclosure log_enclosure(const Enclosure& x, int bits) {
    check_precision_arg(bits);
    return log(x.with_bits(std::max(bits, x.bits()))).with_bits(bits);
}

Enclosure pow_enclosure(const Enclosure& base, const Rational& exponent, int bits) {
    check_precision_arg(bits);
    if (base.sign() != Sign::Positive) throw DomainError("pow requires a certainly positive base");
    const int work = std::max(bits, base.bits()) + kGuardBits;
    if (exponent.is_integer() && mpz_fits_slong_p(exponent.numerator().get_mpz_t())) {
        return pow(base.with_bits(work), exponent.numerator().get_si()).with_bits(bits);
    }
    return pow(base.with_bits(work), Enclosure(exponent, work)).with_bits(bits);
}

Enclosure pow_enclosure(const Enclosure& base, const Enclosure& exponent, int bits) {
    check_precision_arg(bits);
    const int work = std::max({bits, base.bits(), exponent.bits()}) + kGuardBits;
    return pow(base.with_bits(work), exponent.with_bits(work)).with_bits(bits);
}

bool certainly_less(const Enclosure& a, const Enclosure& b) { return mpfr_cmp(a.hi().get(), b.lo().get()) < 0; }

bool certainly_less_equal(const Enclosure& a, const Enclosure& b) {
    return mpfr_cmp(a.hi().get(), b.lo().get()) <= 0;
}

Sign certified_sign(const std::function<Enclosure(int)>& expr, int start_bits) {
    return with_precision_retry<Sign>(
        [&](int bits) -> std::optional<Sign> {
            const Sign s = expr(bits).sign();
            if (s == Sign::Undetermined) return std::nullopt;
            return s;
        },
        start_bits);
}

}  // namespace jnsharp
