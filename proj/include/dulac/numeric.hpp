#pragma once

// MPFR-backed high-precision reals, outward-rounded intervals and complex
// numbers. Results take the calling thread's working precision, which is set
// with ScopedPrecision.

#include "dulac/scalar.hpp"

#include <mpfr.h>

#include <string>

namespace dulac {

inline constexpr unsigned kDefaultPrecision = 128;
inline constexpr unsigned kMaxPrecision = 1024;

unsigned working_precision() noexcept;

class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned bits);
    ~ScopedPrecision();
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

class Real {
public:
    Real();
    Real(double v);
    Real(long v);
    Real(int v) : Real(static_cast<long>(v)) {}
    explicit Real(const Rational& q, mpfr_rnd_t rnd = MPFR_RNDN);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real infinity();
    /// Decimal string such as "1.41421356237309504880". Throws Error{Parse}.
    static Real from_decimal(const std::string& text, mpfr_rnd_t rnd = MPFR_RNDN);

    mpfr_ptr raw() noexcept { return v_; }
    mpfr_srcptr raw() const noexcept { return v_; }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
    /// Exact conversion; the value must be finite.
    Rational to_rational() const;
    /// Scientific notation with `digits` significant digits.
    std::string str(int digits = 20) const;

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real operator-() const;
    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return b < a; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return b <= a; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real const_pi();
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0L) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(const ExactScalar& s) : re(s.re()), im(s.im()) {}

    Real abs() const { return hypot(re, im); }
    Real arg() const { return atan2(im, re); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b);
    Complex operator-() const { return {-re, -im}; }
};

Complex sqrt(const Complex& z);

/// Closed interval [lo, hi] with outward rounding on every operation.
struct Interval {
    Real lo;
    Real hi;

    static Interval point(const Rational& q);
    static Interval decimal(const std::string& text);

    Interval& operator+=(const Interval& o);
    Interval scaled(const Rational& q) const;

    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    /// -1 / +1 when the interval excludes zero, 0 when undecided.
    int certain_sign() const;
    Real width() const;
    Real mid() const;
};

} // namespace dulac
