#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include <mpfr.h>

#include "jnsharp/errors.hpp"
#include "jnsharp/rational.hpp"

namespace jnsharp {

inline constexpr int kDefaultPrecisionBits = 128;
inline constexpr int kMaxPrecisionBits = 2048;
inline constexpr int kMinPrecisionBits = 32;

/// RAII owner of one mpfr_t.
class BigFloat {
public:
    explicit BigFloat(int bits);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return v_; }
    [[nodiscard]] mpfr_srcptr get() const { return v_; }
    [[nodiscard]] int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }

private:
    mpfr_t v_;
    bool live_ = true;
};

/// Sign of an enclosed quantity. Undetermined when the enclosure touches or
/// straddles zero.
enum class Sign { Negative = -1, Undetermined = 0, Positive = 1 };

/// A closed interval [lo, hi] of binary floating-point numbers certified to
/// contain an exact real value. Every operation rounds lo toward -inf and hi
/// toward +inf, so the result always contains the exact mathematical value.
class Enclosure {
public:
    /// Exact singleton [v, v]; v must be representable at `bits`.
    Enclosure(long v, int bits = kDefaultPrecisionBits);  // NOLINT(google-explicit-constructor)
    Enclosure(int v, int bits = kDefaultPrecisionBits) : Enclosure(static_cast<long>(v), bits) {}  // NOLINT
    /// Outward rounding of an exact rational.
    Enclosure(const Rational& q, int bits = kDefaultPrecisionBits);  // NOLINT(google-explicit-constructor)

    /// Parses decimal endpoint strings, rounding lo down and hi up.
    static Enclosure from_decimal(const std::string& lo, const std::string& hi, int bits);

    [[nodiscard]] int bits() const { return bits_; }
    [[nodiscard]] const BigFloat& lo() const { return lo_; }
    [[nodiscard]] const BigFloat& hi() const { return hi_; }

    /// Decimal renderings rounded outward (lo down, hi up), scientific notation
    /// with `digits` significant digits.
    [[nodiscard]] std::string lo_str(int digits = 15) const;
    [[nodiscard]] std::string hi_str(int digits = 15) const;
    /// Nearest doubles; diagnostic only.
    [[nodiscard]] double lo_double() const;
    [[nodiscard]] double hi_double() const;
    [[nodiscard]] double mid_double() const;
    /// hi - lo rounded up, as a double rounded up.
    [[nodiscard]] double width() const;

    [[nodiscard]] bool contains(const Rational& q) const;
    [[nodiscard]] bool contains(const Enclosure& inner) const;
    [[nodiscard]] Sign sign() const;

    /// Same enclosure carried at a different precision (outward rounded).
    [[nodiscard]] Enclosure with_bits(int bits) const;

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
    /// Throws DomainError when the divisor may be zero.
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a);

    struct Uninit {};
    /// Uninitialized endpoints; internal use.
    Enclosure(Uninit, int bits);

private:
    Enclosure(BigFloat lo, BigFloat hi, int bits);

    BigFloat lo_;
    BigFloat hi_;
    int bits_;

    friend Enclosure exp(const Enclosure& x);
    friend Enclosure log(const Enclosure& x);
    friend Enclosure pow(const Enclosure& base, long exponent);
    friend Enclosure min(const Enclosure& a, const Enclosure& b);
    friend Enclosure max(const Enclosure& a, const Enclosure& b);
    friend Enclosure hull(const Enclosure& a, const Enclosure& b);
};

/// Outward-rounded e^x. Throws OverflowError when the result leaves the
/// exponent range.
Enclosure exp(const Enclosure& x);
/// Outward-rounded ln x. Throws DomainError unless x.lo > 0.
Enclosure log(const Enclosure& x);
/// Integer power of a positive (or exact-sign) base, outward rounded.
Enclosure pow(const Enclosure& base, long exponent);
/// base^exponent computed as exp(exponent * log(base)); base.lo > 0 required.
Enclosure pow(const Enclosure& base, const Enclosure& exponent);
Enclosure min(const Enclosure& a, const Enclosure& b);
Enclosure max(const Enclosure& a, const Enclosure& b);
/// Smallest enclosure containing both.
Enclosure hull(const Enclosure& a, const Enclosure& b);

/// e enclosed at the given precision.
Enclosure e_const(int bits = kDefaultPrecisionBits);

Enclosure exp_enclosure(const Rational& x, int bits = kDefaultPrecisionBits);
Enclosure exp_enclosure(const Enclosure& x, int bits);
Enclosure log_enclosure(const Rational& x, int bits = kDefaultPrecisionBits);
Enclosure log_enclosure(const Enclosure& x, int bits);
Enclosure pow_enclosure(const Enclosure& base, const Rational& exponent, int bits = kDefaultPrecisionBits);
Enclosure pow_enclosure(const Enclosure& base, const Enclosure& exponent, int bits);

/// a.hi < b.lo
bool certainly_less(const Enclosure& a, const Enclosure& b);
/// a.hi <= b.lo
bool certainly_less_equal(const Enclosure& a, const Enclosure& b);

/// Evaluates `attempt(bits)` at start_bits, doubling the precision while it
/// returns nullopt (undetermined). Throws PrecisionExhausted past the cap.
template <class T>
T with_precision_retry(const std::function<std::optional<T>(int)>& attempt,
                       int start_bits = kDefaultPrecisionBits,
                       int cap_bits = kMaxPrecisionBits) {
    for (int bits = start_bits; bits <= cap_bits; bits *= 2) {
        if (auto r = attempt(bits)) return *std::move(r);
    }
    throw PrecisionExhausted("comparison undetermined at " + std::to_string(cap_bits) + " bits");
}

/// Certified sign of a quantity computed by `expr(bits)`, retrying at doubled
/// precision while undetermined.
Sign certified_sign(const std::function<Enclosure(int)>& expr, int start_bits = kDefaultPrecisionBits);

}  // namespace jnsharp
