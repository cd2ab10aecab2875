#include "dulac/gevrey.hpp"

#include "dulac/error.hpp"

#include <ostream>

namespace dulac {

namespace {

// Raises C until rho_k <= C * A^{x_k} holds for every k as computed.
void certify(GrowthFit& fit, const std::vector<Real>& x, const std::vector<Real>& rho)
{
    Real bump = Real(1L) + pow(Real(2L), -static_cast<long>(working_precision()) + 8);
    for (int round = 0; round < 64; ++round) {
        bool ok = true;
        for (std::size_t k = 0; k < rho.size(); ++k) {
            if (rho[k] > fit.C * pow(fit.A, x[k])) {
                ok = false;
                break;
            }
        }
        if (ok)
            return;
        fit.C = fit.C * bump;
    }
    fit.finite = false;
}

std::string csv_real(const Real& v)
{
    return v.str(17);
}

} // namespace

Slope slope(const LinearData& lin)
{
    if (!lin.A.at(lin.n).is_zero())
        return Slope::inf();
    const auto& basis = *lin.basis;
    std::optional<Rational> best;
    for (unsigned j = lin.ell + 1; j <= lin.n; ++j) {
        if (!lin.nu_j[j])
            continue;
        Exponent mu = *lin.nu_j[j] - lin.nu;
        Rational re = exact_value(mu, basis) ? exact_value(mu, basis)->re() : re_lower_bound(mu, basis);
        Rational v = re / Rational(static_cast<long>(j - lin.ell));
        if (!best || v < *best)
            best = v;
    }
    if (!best)
        fail(ErrorKind::SlopeUndetermined,
             "A_n = 0 and no nu_j with j > ell is present below the cutoff; extend the cutoff");
    if (sgn(*best) <= 0)
        fail(ErrorKind::SlopeUndetermined, "computed slope " + best->get_str() + " is not positive");
    return Slope::finite(*best);
}

GrowthFit fit_growth_at(const std::vector<Real>& x, const std::vector<Real>& rho, bool clamp)
{
    GrowthFit fit;
    fit.A = Real(1L);
    fit.C = Real(0L);
    bool have_ratio = false;
    std::optional<std::size_t> prev;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        if (rho[k].is_zero())
            continue;
        if (prev && x[k] > x[*prev]) {
            Real r = pow(rho[k] / rho[*prev], Real(1L) / (x[k] - x[*prev]));
            if (!have_ratio || r > fit.A) {
                fit.A = r;
                fit.k_A = k + 1;
            }
            have_ratio = true;
        }
        prev = k;
    }
    if (!have_ratio)
        fit.A = Real(1L);
    if (clamp && fit.A < Real(1L)) {
        fit.A = Real(1L);
        fit.k_A = 0;
    }
    for (std::size_t k = 0; k < rho.size(); ++k) {
        Real c = rho[k] / pow(fit.A, x[k]);
        if (c > fit.C) {
            fit.C = c;
            fit.k_C = k + 1;
        }
    }
    if (!fit.A.is_finite() || !fit.C.is_finite()) {
        fit.finite = false;
        return fit;
    }
    certify(fit, x, rho);
    return fit;
}

GrowthFit fit_growth(const std::vector<Real>& rho)
{
    std::vector<Real> x;
    for (std::size_t k = 0; k < rho.size(); ++k)
        x.emplace_back(static_cast<long>(k + 1));
    return fit_growth_at(x, rho, true);
}

std::vector<RhoEntry> normalized_coeffs(const DulacSeries& solution, const Slope& s, const Real& r, double tol)
{
    const auto& basis = *solution.basis();
    std::vector<RhoEntry> rows;
    std::size_t k = 0;
    for (const auto& t : solution.terms()) {
        RhoEntry e;
        e.k = ++k;
        e.lambda = t.exp;
        e.re_lambda = re_double(t.exp, basis);
        e.im_lambda = im_double(t.exp, basis);
        if (auto v = exact_value(t.exp, basis)) {
            e.re_text = v->re().get_str();
            e.im_text = v->im().get_str();
        } else {
            e.re_text = re_real(t.exp, basis).str(17);
            e.im_text = Real(e.im_lambda).str(17);
        }
        e.deg_c = t.coeff.degree();
        e.norm = poly_norm(t.coeff, r);
        if (s.infinite) {
            e.gamma = Real(1L);
        } else {
            ExactScalar z = value(t.exp, basis) / ExactScalar(s.value);
            e.gamma = gamma_abs(z, tol);
        }
        e.rho = e.norm / e.gamma;
        rows.push_back(std::move(e));
    }
    return rows;
}

const char* to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::GevreyBounded:
        return "GevreyBounded";
    case Verdict::ConvergentCandidate:
        return "ConvergentCandidate";
    case Verdict::Inconclusive:
        return "Inconclusive";
    }
    return "Inconclusive";
}

GevreyReport classify(const Slope& s, const DulacSeries& solution, const Real& r, double tol)
{
    GevreyReport rep;
    rep.s = s;
    rep.R = r;
    rep.rows = normalized_coeffs(solution, s, r, tol);

    std::vector<Real> rho, xk, xre;
    for (const auto& row : rep.rows) {
        rho.push_back(row.rho);
        xk.emplace_back(static_cast<long>(row.k));
        xre.push_back(re_real(row.lambda, *solution.basis()));
    }
    rep.fit_k = fit_growth_at(xk, rho, true);
    rep.fit_re = fit_growth_at(xre, rho, !s.infinite);
    for (auto& row : rep.rows)
        row.envelope = rep.fit_k.C * pow(rep.fit_k.A, static_cast<long>(row.k));

    if (s.infinite) {
        rep.verdict = rep.fit_re.finite ? Verdict::ConvergentCandidate : Verdict::Inconclusive;
        if (rep.fit_re.finite)
            rep.radius = Real(1L) / rep.fit_re.A;
    } else if (rep.rows.size() < 3 || !rep.fit_k.finite) {
        rep.verdict = Verdict::Inconclusive;
    } else {
        rep.verdict = Verdict::GevreyBounded;
    }
    return rep;
}

void write_csv(std::ostream& os, const GevreyReport& report)
{
    os << "k,re_lambda,im_lambda,deg_c,norm_R,gamma_abs,rho,envelope_Ck\n";
    for (const auto& row : report.rows) {
        os << row.k << ',' << row.re_text << ',' << row.im_text << ',' << row.deg_c << ',' << csv_real(row.norm)
           << ',' << csv_real(row.gamma) << ',' << csv_real(row.rho) << ',' << csv_real(row.envelope) << '\n';
    }
}

} // namespace dulac
