#include "dulac/banach.hpp"

#include "dulac/error.hpp"
#include "dulac/gamma.hpp"

#include <algorithm>
#include <cmath>

namespace dulac {

namespace {

double gamma_tol()
{
    return std::ldexp(1.0, -static_cast<int>(std::min(working_precision(), 1000u)));
}

Real slack()
{
    return Real(1L) + pow(Real(2L), -static_cast<long>(working_precision()) + 10);
}

Complex complex_value(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return Complex(*v);
    Real re, im;
    {
        ScopedPrecision scope(basis.precision());
        re = re_enclosure(e, basis).mid();
        im = im_enclosure(e, basis).mid();
    }
    return {re + Real(0L), im + Real(0L)};
}

Exponent base_of(const NormParams& p, const Generators& gens)
{
    if (p.lambda_base.coords.empty())
        return Exponent::zero(gens.basis()->size());
    if (p.lambda_base.coords.size() != gens.basis()->size())
        fail(ErrorKind::Basis, "lambda_base dimension does not match the generators' basis");
    return p.lambda_base;
}

} // namespace

void NormParams::validate() const
{
    if (!(R > Real(1L)))
        fail(ErrorKind::Domain, "norm parameter R must exceed 1, got " + R.str(6));
    if (sgn(s) <= 0)
        fail(ErrorKind::Domain, "slope s must be positive");
    if (sgn(Kcal) < 0)
        fail(ErrorKind::Domain, "Kcal must be nonnegative");
}

Real gamma_weight(const Generators& gens, const MultiIndex& m, const Rational& s)
{
    Exponent e = gens.exponent_of(m);
    if (auto v = exact_value(e, *gens.basis()))
        return gamma_abs(ExactScalar(v->re() / s, v->im() / s), gamma_tol());
    Complex z = complex_value(e, *gens.basis());
    Real sr(s);
    return gamma_abs(Complex(z.re / sr, z.im / sr), gamma_tol());
}

Real level_weight(const Generators& gens, const MultiIndex& m, const NormParams& p)
{
    Exponent e = base_of(p, gens) + gens.exponent_of(m);
    return complex_value(e, *gens.basis()).abs() + Real(p.Kcal) * Real(static_cast<long>(total_degree(m)));
}

Real h_norm(const MSeries& g, const NormParams& p)
{
    p.validate();
    const auto& gens = *g.gens();
    Real acc(0L);
    for (const auto& [m, c] : g.terms()) {
        Real term = poly_norm(c, p.R) / gamma_weight(gens, m, p.s);
        if (p.j > 0)
            term *= pow(level_weight(gens, m, p), static_cast<long>(p.j));
        acc += term;
    }
    return acc;
}

Lemma6Check check_lemma6(const MSeries& g1, const MSeries& g2, const NormParams& p)
{
    if (p.j != 0)
        fail(ErrorKind::PreconditionViolated, "the product estimate is stated at level j = 0");
    p.validate();
    const auto& gens = *g1.gens();
    Lemma6Check out{Real(0L), Real(0L), Real(0L), true};
    if (g1.is_zero() || g2.is_zero())
        return out;

    MSeries full1 = MSeries::from_terms(g1.gens(), g1.terms());
    MSeries full2 = MSeries::from_terms(g2.gens(), g2.terms());
    out.lhs = h_norm(mul(full1, full2), p);

    std::map<MultiIndex, Real> gw;
    auto weight = [&](const MultiIndex& m) -> const Real& {
        auto it = gw.find(m);
        if (it == gw.end())
            it = gw.emplace(m, gamma_weight(gens, m, p.s)).first;
        return it->second;
    };
    for (const auto& [a, ca] : g1.terms()) {
        for (const auto& [b, cb] : g2.terms()) {
            MultiIndex m = a;
            for (std::size_t k = 0; k < m.size(); ++k)
                m[k] += b[k];
            out.C_used = max(out.C_used, weight(a) * weight(b) / weight(m));
        }
    }
    out.rhs = out.C_used * h_norm(g1, p) * h_norm(g2, p);
    out.pass = out.lhs <= out.rhs * slack();
    return out;
}

Real lemma6_constant(const Rational& beta, const Rational& s)
{
    if (sgn(beta) <= 0 || sgn(s) <= 0)
        fail(ErrorKind::Domain, "lemma6_constant needs beta > 0 and s > 0");
    Rational x = beta / s;
    Real g1 = gamma_abs(ExactScalar(x), gamma_tol());
    Real g2 = gamma_abs(ExactScalar(Rational(2 * x)), gamma_tol());
    return max(Real(1L), g1 * g1 / g2);
}

Lemma5Check check_lemma5(const TPoly& a, const MultiIndex& l, unsigned j, unsigned ell,
                         const MSeries& g, const NormParams& p)
{
    p.validate();
    const auto& gens = *g.gens();
    const auto& basis = *gens.basis();
    if (l.size() != gens.kappa())
        fail(ErrorKind::Schema, "multi-index l has the wrong length");
    Rational lnorm(static_cast<long>(total_degree(l)));
    if (a.degree() > 0 && Rational(a.degree()) > p.Kcal * lnorm)
        fail(ErrorKind::PreconditionViolated, "deg a = " + std::to_string(a.degree()) + " exceeds Kcal |l|");
    Rational need = (Rational(static_cast<long>(j)) - Rational(static_cast<long>(ell))) * p.s;
    auto sign = re_sign(gens.exponent_of(l), need, basis);
    if (!sign)
        fail(ErrorKind::UndecidableComparison, "cannot compare Re<l, r> with (j - ell) s");
    if (*sign < 0)
        fail(ErrorKind::PreconditionViolated, "Re<l, r> < (j - ell) s = " + need.get_str());
    for (const auto& [m, c] : g.terms()) {
        if (c.degree() > 0 && Rational(c.degree()) > p.Kcal * Rational(static_cast<long>(total_degree(m))))
            fail(ErrorKind::PreconditionViolated, "a coefficient of g violates deg C_m <= Kcal |m|");
    }

    Exponent lambda = base_of(p, gens);
    MSeries h = MSeries::from_terms(g.gens(), g.terms());
    for (unsigned k = 0; k < j; ++k)
        h = hat_delta_shifted(h, lambda);
    h = h.times_monomial(a, l);

    NormParams p0 = p;
    p0.j = 0;
    NormParams pl = p;
    pl.j = ell;

    Lemma5Check out{h_norm(h, p0), Real(0L), Real(0L), false};
    Real an = poly_norm(a, p.R);
    long power = static_cast<long>(j) - static_cast<long>(ell);
    for (const auto& [m, c] : g.terms()) {
        MultiIndex ml = m;
        for (std::size_t k = 0; k < ml.size(); ++k)
            ml[k] += l[k];
        Real f = an * gamma_weight(gens, m, p.s) / gamma_weight(gens, ml, p.s);
        if (power != 0)
            f *= pow(level_weight(gens, m, p), power);
        out.factor = max(out.factor, f);
    }
    out.bound = out.factor * h_norm(g, pl);
    out.pass = out.lhs <= out.bound * slack();
    return out;
}

Real majorant_bound(const Generators& gens, const MajorantCoeffs& coeffs, const Real& rho,
                    const std::vector<Real>& snorms, const NormParams& p)
{
    p.validate();
    if (rho.sign() < 0)
        fail(ErrorKind::Domain, "rho must be nonnegative");
    Real C = lemma6_constant(gens.beta(), p.s);
    Real acc(0L);
    for (const auto& [key, a] : coeffs) {
        const auto& [pm, q] = key;
        if (q.size() != snorms.size())
            fail(ErrorKind::Schema, "q has " + std::to_string(q.size()) + " entries but " +
                                        std::to_string(snorms.size()) + " norms were given");
        unsigned long pd = total_degree(pm);
        if (a.degree() > 0 && Rational(a.degree()) > p.Kcal * Rational(static_cast<long>(pd)))
            fail(ErrorKind::PreconditionViolated, "majorant coefficient violates deg a <= Kcal |p|");
        Real term = poly_norm(a, p.R);
        if (pd > 0) {
            term /= gamma_weight(gens, pm, p.s);
            term *= pow(rho, static_cast<long>(pd));
        }
        unsigned long qd = total_degree(q);
        if (qd > 0)
            term *= pow(C, static_cast<long>(qd));
        for (std::size_t k = 0; k < q.size(); ++k)
            if (q[k] > 0)
                term *= pow(snorms[k], static_cast<long>(q[k]));
        acc += term;
    }
    return acc;
}

RChoice choose_R(const Rational& Kcal, const Generators& gens, const Exponent& lambda_base)
{
    if (sgn(Kcal) < 0)
        fail(ErrorKind::Domain, "Kcal must be nonnegative");
    if (!lambda_base.coords.empty()) {
        auto s = re_sign(lambda_base, Rational(0), *gens.basis());
        if (!s || *s < 0)
            fail(ErrorKind::Domain, "the theta bound needs Re lambda_base >= 0");
    }
    RChoice out;
    out.beta = gens.beta();
    out.theta_bound = 1 / out.beta;
    Rational r = 2 * Kcal * out.theta_bound;
    out.R_default = r > 2 ? r : Rational(2);
    out.R_default.canonicalize();
    out.Theta = out.theta_bound / (1 - Kcal * out.theta_bound / out.R_default);
    out.Theta.canonicalize();
    return out;
}

SectorRadius sector_radius(const Generators& gens, const Rational& Kcal, double eps,
                           double arg_bound, double varrho)
{
    double beta = gens.beta().get_d();
    double K = Kcal.get_d();
    if (!(eps > 0) || (K > 0 && !(eps < beta / K)))
        fail(ErrorKind::Domain, "eps must satisfy 0 < eps < beta / Kcal");
    if (!(varrho > 0) || !(arg_bound >= 0))
        fail(ErrorKind::Domain, "varrho must be positive and arg_bound nonnegative");

    // |ln x| <= v + arg_bound with v = -ln|x|; find the last zero of
    // h(v) = exp(eps v) - v - arg_bound, which is convex.
    auto h = [&](double v) { return std::exp(eps * v) - v - arg_bound; };
    double lo = std::max(0.0, -std::log(eps) / eps);
    double v0 = 0;
    if (h(lo) < 0) {
        double hi = std::max(1.0, 2 * lo);
        while (h(hi) < 0)
            hi *= 2;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (h(mid) < 0 ? lo : hi) = mid;
        }
        v0 = hi;
    }

    SectorRadius out;
    out.log_radius = std::exp(-v0);
    out.gamma = 1;
    for (const auto& r : gens.r())
        out.gamma = std::max(out.gamma, std::exp(std::fabs(im_double(r, *gens.basis())) * arg_bound));
    double conv = std::pow(varrho / out.gamma, 1.0 / (beta - eps * K));
    out.radius = std::min({out.log_radius, conv, 1.0});
    return out;
}

} // namespace dulac
