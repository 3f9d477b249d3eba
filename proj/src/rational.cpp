#include "jnsharp/rational.hpp"

#include <cctype>

#include "jnsharp/errors.hpp"

namespace jnsharp {

namespace {

// Unicode minus sign U+2212 in UTF-8.
constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// Unsigned integer token: "123" or "10^9".
mpz_class parse_natural(std::string_view tok, std::string_view whole) {
    const auto caret = tok.find('^');
    if (caret == std::string_view::npos) {
        if (!all_digits(tok)) throw ParseError("invalid rational: '" + std::string(whole) + "'");
        return mpz_class(std::string(tok), 10);
    }
    const auto base = tok.substr(0, caret);
    const auto exp = tok.substr(caret + 1);
    if (!all_digits(base) || !all_digits(exp) || exp.size() > 6) {
        throw ParseError("invalid rational: '" + std::string(whole) + "'");
    }
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), mpz_class(std::string(base), 10).get_mpz_t(),
               std::stoul(std::string(exp)));
    return out;
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    auto s = trim(text);
    bool negative = false;
    if (s.starts_with('-')) {
        negative = true;
        s.remove_prefix(1);
    } else if (s.starts_with(kUnicodeMinus)) {
        negative = true;
        s.remove_prefix(kUnicodeMinus.size());
    }
    const auto slash = s.find('/');
    mpz_class num;
    mpz_class den = 1;
    if (slash == std::string_view::npos) {
        num = parse_natural(s, text);
    } else {
        num = parse_natural(s.substr(0, slash), text);
        den = parse_natural(s.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    if (negative) num = -num;
    return Rational(num, den);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base.is_zero()) throw DomainError("zero to a negative power");
        return Rational(1) / pow(base, -exponent);
    }
    mpz_class n;
    mpz_class d;
    const auto e = static_cast<unsigned long>(exponent);
    mpz_pow_ui(n.get_mpz_t(), base.numerator().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.denominator().get_mpz_t(), e);
    return Rational(n, d);
}

}  // namespace jnsharp
