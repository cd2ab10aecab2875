#include "dulac/numeric.hpp"

#include "dulac/error.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>

namespace dulac {

namespace {

thread_local unsigned g_precision = kDefaultPrecision;

} // namespace

unsigned working_precision() noexcept
{
    return g_precision;
}

ScopedPrecision::ScopedPrecision(unsigned bits) : saved_(g_precision)
{
    g_precision = std::clamp<unsigned>(bits, MPFR_PREC_MIN, kMaxPrecision * 4);
}

ScopedPrecision::~ScopedPrecision()
{
    g_precision = saved_;
}

Real::Real()
{
    mpfr_init2(v_, g_precision);
    mpfr_set_zero(v_, 1);
}

Real::Real(double v)
{
    mpfr_init2(v_, g_precision);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(long v)
{
    mpfr_init2(v_, g_precision);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const Rational& q, mpfr_rnd_t rnd)
{
    mpfr_init2(v_, g_precision);
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
}

Real::Real(const Real& o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real()
{
    mpfr_clear(v_);
}

Real Real::infinity()
{
    Real r;
    mpfr_set_inf(r.v_, 1);
    return r;
}

Real Real::from_decimal(const std::string& text, mpfr_rnd_t rnd)
{
    Real r;
    char* end = nullptr;
    mpfr_strtofr(r.v_, text.c_str(), &end, 10, rnd);
    if (end == text.c_str() || *end != '\0' || !r.is_finite())
        fail(ErrorKind::Parse, "invalid decimal literal '" + text + "'");
    return r;
}

Rational Real::to_rational() const
{
    if (!is_finite())
        fail(ErrorKind::Domain, "non-finite value has no rational form");
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
    Rational q(mant);
    if (e >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    q.canonicalize();
    return q;
}

std::string Real::str(int digits) const
{
    if (mpfr_nan_p(v_))
        return "nan";
    if (mpfr_inf_p(v_))
        return sign() > 0 ? "inf" : "-inf";
    int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, v_);
    std::string out(static_cast<std::size_t>(n) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), "%.*Re", digits - 1, v_);
    out.resize(static_cast<std::size_t>(n));
    return out;
}

Real Real::operator-() const
{
    Real r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& o)
{
    Real r;
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    return *this = std::move(r);
}

Real& Real::operator-=(const Real& o)
{
    Real r;
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    return *this = std::move(r);
}

Real& Real::operator*=(const Real& o)
{
    Real r;
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    return *this = std::move(r);
}

Real& Real::operator/=(const Real& o)
{
    Real r;
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    return *this = std::move(r);
}

#define DULAC_UNARY(name, fn)                 \
    Real name(const Real& x)                  \
    {                                         \
        Real r;                               \
        fn(r.raw(), x.raw(), MPFR_RNDN);      \
        return r;                             \
    }

DULAC_UNARY(abs, mpfr_abs)
DULAC_UNARY(sqrt, mpfr_sqrt)
DULAC_UNARY(log, mpfr_log)
DULAC_UNARY(exp, mpfr_exp)
#undef DULAC_UNARY

Real pow(const Real& x, const Real& y)
{
    Real r;
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, long n)
{
    Real r;
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

Real atan2(const Real& y, const Real& x)
{
    Real r;
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real hypot(const Real& x, const Real& y)
{
    Real r;
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

Real const_pi()
{
    Real r;
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b)
{
    return a < b ? b : a;
}

Real min(const Real& a, const Real& b)
{
    return b < a ? b : a;
}

Complex operator/(const Complex& a, const Complex& b)
{
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Complex sqrt(const Complex& z)
{
    // principal branch
    Real m = z.abs();
    Real re = sqrt((m + z.re) / Real(2L));
    Real im = sqrt((m - z.re) / Real(2L));
    if (z.im.sign() < 0)
        im = -im;
    return {re, im};
}

Interval Interval::point(const Rational& q)
{
    return {Real(q, MPFR_RNDD), Real(q, MPFR_RNDU)};
}

Interval Interval::decimal(const std::string& text)
{
    return {Real::from_decimal(text, MPFR_RNDD), Real::from_decimal(text, MPFR_RNDU)};
}

Interval& Interval::operator+=(const Interval& o)
{
    Real l, h;
    mpfr_add(l.raw(), lo.raw(), o.lo.raw(), MPFR_RNDD);
    mpfr_add(h.raw(), hi.raw(), o.hi.raw(), MPFR_RNDU);
    lo = std::move(l);
    hi = std::move(h);
    return *this;
}

Interval Interval::scaled(const Rational& q) const
{
    Interval out;
    if (sgn(q) >= 0) {
        mpfr_mul_q(out.lo.raw(), lo.raw(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(out.hi.raw(), hi.raw(), q.get_mpq_t(), MPFR_RNDU);
    } else {
        mpfr_mul_q(out.lo.raw(), hi.raw(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(out.hi.raw(), lo.raw(), q.get_mpq_t(), MPFR_RNDU);
    }
    return out;
}

int Interval::certain_sign() const
{
    if (lo.sign() > 0)
        return 1;
    if (hi.sign() < 0)
        return -1;
    return 0;
}

Real Interval::width() const
{
    Real w;
    mpfr_sub(w.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
    return w;
}

Real Interval::mid() const
{
    return (lo + hi) / Real(2L);
}

} // namespace dulac
