#pragma once

// Exact complex rationals.

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace dulac {

using Rational = mpq_class;

/// a + b*i with a, b exact rationals. mpq_class keeps both parts canonical
/// (coprime, positive denominator) after every arithmetic operation.
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(long v) : re_(v) {}
    ExactScalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    ExactScalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static ExactScalar i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }

    ExactScalar conj() const { return {re_, -im_}; }
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    ExactScalar operator-() const { return {-re_, -im_}; }
    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    ExactScalar& operator/=(const ExactScalar& o);

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// "a/b" for reals, "a/b+c/di" otherwise (lowercase i, no spaces).
    std::string str() const;

    /// Accepts "3", "-1/2", "2i", "-i", "1/2+3/4i", "1-i". Throws Error{Parse}.
    static ExactScalar parse(std::string_view text);

private:
    Rational re_{0};
    Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

/// Parses an integer or "p/q" rational. Throws Error{Parse}.
Rational parse_rational(std::string_view text);

/// As parse_rational, but also accepts decimals such as "0.1" or "2.5e-3",
/// converted exactly (0.1 -> 1/10).
Rational parse_decimal_rational(std::string_view text);

/// Splits "a+bi" style text into real and imaginary component texts
/// ("0" when a part is absent, "1"/"-1" for a bare i).
std::pair<std::string, std::string> split_complex_literal(std::string_view text);

} // namespace dulac
