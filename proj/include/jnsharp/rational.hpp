#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace jnsharp {

/// Exact arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "p/q", "p" with optional leading '-' (ASCII or U+2212). Integer
    /// tokens may be written as powers, e.g. "1/10^9".
    static Rational parse(std::string_view text);

    /// "p/q", or "p" when the denominator is 1.
    [[nodiscard]] std::string str() const;

    [[nodiscard]] mpz_class numerator() const { return v_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return v_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return v_; }

    [[nodiscard]] int sign() const { return sgn(v_); }
    [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
    [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
    /// Approximate value for diagnostics and plots only.
    [[nodiscard]] double to_double() const { return v_.get_d(); }

    /// Greatest integer <= this.
    [[nodiscard]] mpz_class floor() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// base^exponent for an integer exponent (negative allowed for nonzero base).
Rational pow(const Rational& base, long exponent);

}  // namespace jnsharp
