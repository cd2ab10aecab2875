#include "dulac/solver.hpp"

#include "dulac/error.hpp"
#include "dulac/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dulac {

namespace {

constexpr unsigned kRootBits = 256;
constexpr double kRootBand = 1e-20;

DulacSeries exact_prefix(const DulacSeries& s, std::size_t count)
{
    std::vector<Term> t(s.terms().begin(), s.terms().begin() + static_cast<long>(count));
    return DulacSeries::from_terms(s.basis(), std::move(t));
}

std::string exponent_text(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return v->str();
    std::string out = "[";
    for (const auto& c : to_strings(e))
        out += (out.size() > 1 ? ", " : "") + c;
    return out + "]";
}

Rational re_value(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return v->re();
    return re_lower_bound(e, basis);
}

std::vector<Complex> numeric_roots(const TPoly& l)
{
    const auto& c = l.coeffs();
    std::size_t deg = c.size() - 1;
    std::vector<Complex> a;
    for (const auto& x : c)
        a.emplace_back(x);
    std::vector<Complex> roots;
    if (deg == 1) {
        roots.push_back(-(a[0] / a[1]));
    } else if (deg == 2) {
        Complex disc = a[1] * a[1] - Complex(Real(4L)) * a[2] * a[0];
        Complex sq = sqrt(disc);
        Complex two_a = Complex(Real(2L)) * a[2];
        roots.push_back((-a[1] + sq) / two_a);
        roots.push_back((-a[1] - sq) / two_a);
    } else if (deg >= 3) {
        // Durand-Kerner on the monic polynomial.
        std::vector<Complex> m;
        for (auto& x : a)
            m.push_back(x / a.back());
        Real bound(1L);
        for (std::size_t k = 0; k < deg; ++k)
            bound = max(bound, Real(1L) + m[k].abs());
        Complex seed(Real(0.4), Real(0.9));
        Complex z(Real(1L));
        for (std::size_t k = 0; k < deg; ++k) {
            z = z * seed;
            roots.push_back(z * Complex(bound));
        }
        Real tol = pow(Real(2L), -static_cast<long>(kRootBits) + 16);
        for (int iter = 0; iter < 2000; ++iter) {
            Real change;
            for (std::size_t i = 0; i < deg; ++i) {
                Complex num = m[deg];
                for (std::size_t k = deg; k-- > 0;)
                    num = num * roots[i] + m[k];
                Complex den(Real(1L));
                for (std::size_t j = 0; j < deg; ++j) {
                    if (j != i)
                        den = den * (roots[i] - roots[j]);
                }
                Complex step = num / den;
                roots[i] = roots[i] - step;
                change = max(change, step.abs());
            }
            if (change < tol)
                break;
        }
    }
    return roots;
}

struct CondI {
    bool holds = false;
    double margin = 0;
};

// Condition (i) at lambda: every root of L has Re < Re lambda.
CondI condition_i(const LinearData& lin, const std::vector<Complex>& roots, const Exponent& lambda,
                  bool throw_on_band)
{
    const auto& basis = *lin.basis;
    auto exact = exact_value(lambda, basis);
    if (exact && lin.L.eval(*exact).is_zero())
        return {false, 0.0};
    if (roots.empty())
        return {true, std::numeric_limits<double>::infinity()};

    // Exact root of a linear L.
    if (lin.L.degree() == 1 && exact) {
        ExactScalar r = -(lin.L.coeff(0) / lin.L.coeff(1));
        Rational d = exact->re() - r.re();
        return {sgn(d) > 0, d.get_d()};
    }

    ScopedPrecision p(kRootBits);
    Real re_l = re_real(lambda, basis);
    Real worst = Real::infinity();
    for (const auto& z : roots) {
        Real d = re_l - z.re;
        if (abs(d) < Real(kRootBand)) {
            if (throw_on_band)
                fail(ErrorKind::IndeterminateRoot,
                     "root of L with real part " + z.re.str(25) + " lies within 1e-20 of Re lambda_m = " +
                         re_l.str(25) + "; raise precision or treat as resonant");
            return {false, d.to_double()};
        }
        worst = min(worst, d);
    }
    return {worst.sign() > 0, worst.to_double()};
}

struct CondII {
    bool holds = false;
    double margin = 0;
    bool tau_known = true;
};

CondII condition_ii(const LinearData& lin, const Exponent& lambda)
{
    if (!lin.tau)
        return {false, std::numeric_limits<double>::quiet_NaN(), false};
    const auto& basis = *lin.basis;
    std::optional<Rational> worst;
    bool strict = true;
    for (const auto& nj : lin.nu_j) {
        if (!nj)
            continue;
        Exponent diff = lambda - *nj;
        Rational bound = 2 * *lin.tau;
        auto s = re_sign(diff, bound, basis);
        if (!s || *s <= 0)
            strict = false;
        Rational m = re_value(lambda, basis) - re_value(*nj, basis) - bound;
        if (!worst || m < *worst)
            worst = m;
    }
    if (!worst)
        return {true, std::numeric_limits<double>::infinity(), true};
    return {strict, worst->get_d(), true};
}

} // namespace

double Slope::to_double() const
{
    return infinite ? std::numeric_limits<double>::infinity() : value.get_d();
}

std::string Slope::str() const
{
    return infinite ? "inf" : value.get_str();
}

bool LinearData::same_leading(const LinearData& o) const
{
    return nu == o.nu && A == o.A && ell == o.ell;
}

LinearData extract_linearization(const ODESpec& f, const DulacSeries& prefix)
{
    LinearData lin;
    lin.basis = prefix.basis();
    lin.n = f.n();
    const auto& basis = *lin.basis;

    std::vector<DulacSeries> g;
    for (unsigned j = 0; j <= f.n(); ++j)
        g.push_back(substitute(partial(f, j), prefix));

    std::optional<Exponent> nu;
    for (const auto& gj : g) {
        if (gj.is_zero())
            continue;
        const Exponent& e = gj.terms().front().exp;
        if (!nu || compare(e, *nu, basis) < 0)
            nu = e;
    }
    if (!nu)
        fail(ErrorKind::AllDerivativesVanish, "every partial derivative dF/dy_j vanishes along the prefix "
                                              "below the cutoff");
    lin.nu = *nu;

    lin.A.assign(f.n() + 1, ExactScalar());
    lin.nu_j.assign(f.n() + 1, std::nullopt);
    lin.B.assign(f.n() + 1, std::nullopt);
    for (unsigned j = 0; j <= f.n(); ++j) {
        const auto& terms = g[j].terms();
        if (terms.empty())
            continue;
        std::size_t next = 0;
        if (terms.front().exp == lin.nu) {
            const TPoly& c = terms.front().coeff;
            if (c.degree() > 0)
                fail(ErrorKind::HypothesisViolation,
                     "coefficient of x^nu in dF/dy_" + std::to_string(j) + " is the nonconstant polynomial of degree " +
                         std::to_string(c.degree()) + " in t; constant A_j required");
            lin.A[j] = c.coeff(0);
            next = 1;
        }
        if (next < terms.size()) {
            lin.nu_j[j] = terms[next].exp;
            lin.B[j] = terms[next].coeff;
        }
    }
    if (g[f.n()].is_zero())
        lin.warnings.push_back("DerivativeYnZero: dF/dy_" + std::to_string(f.n()) +
                               " vanishes along the prefix below the cutoff");

    for (unsigned j = 0; j <= f.n(); ++j) {
        if (!lin.A[j].is_zero())
            lin.ell = j;
    }
    std::vector<ExactScalar> lc(lin.A.begin(), lin.A.begin() + lin.ell + 1);
    lin.L = TPoly(std::move(lc));

    if (lin.ell == lin.n) {
        lin.tau = Rational(0);
    } else {
        try {
            apply_slope(lin, slope(lin));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SlopeUndetermined)
                throw;
            lin.warnings.push_back(std::string("SlopeUndetermined: ") + e.what());
        }
    }
    return lin;
}

void apply_slope(LinearData& lin, const Slope& s)
{
    if (lin.ell == lin.n) {
        lin.tau = Rational(0);
        return;
    }
    if (s.infinite)
        fail(ErrorKind::SlopeUndetermined, "infinite slope with ell < n");
    lin.tau = Rational(static_cast<long>(lin.n - lin.ell)) * s.value;
}

ConditionReport check_conditions(const LinearData& lin, const DulacSeries& prefix,
                                 const std::optional<Exponent>& next_exponent)
{
    if (prefix.is_zero())
        fail(ErrorKind::Schema, "condition check needs a nonempty prefix");
    const auto& basis = *lin.basis;
    ConditionReport rep;
    rep.lambda_m = prefix.terms().back().exp;

    std::vector<Complex> roots;
    {
        ScopedPrecision p(kRootBits);
        roots = numeric_roots(lin.L);
        for (const auto& z : roots)
            rep.roots.push_back({z.re.to_double(), z.im.to_double()});
    }

    CondI ci = condition_i(lin, roots, rep.lambda_m, true);
    rep.cond_i = ci.holds;
    rep.margin_i = ci.margin;
    if (!ci.holds)
        rep.notes.push_back("condition (i) fails: L has a root with Re >= Re lambda_m");

    CondII cii = condition_ii(lin, rep.lambda_m);
    rep.cond_ii = cii.holds;
    rep.margin_ii = cii.margin;
    if (!cii.tau_known)
        rep.notes.push_back("condition (ii) undecided: slope undetermined");
    else if (!cii.holds)
        rep.notes.push_back("condition (ii) fails: Re lambda_m <= max Re nu_j + 2 Re tau");

    if (next_exponent) {
        Exponent gap = *next_exponent - rep.lambda_m;
        auto s = re_sign(gap, Rational(0), basis);
        rep.cond_iii = s && *s > 0;
        rep.margin_iii = re_double(gap, basis);
        if (!*rep.cond_iii)
            rep.notes.push_back("condition (iii) fails: Re(lambda_{m+1} - lambda_m) <= 0");
    }

    for (std::size_t k = 0; k < prefix.size(); ++k) {
        const Exponent& e = prefix.terms()[k].exp;
        CondI i = condition_i(lin, roots, e, false);
        if (i.holds && condition_ii(lin, e).holds) {
            rep.minimal_m = k + 1;
            break;
        }
    }
    return rep;
}

TPoly solve_coefficient(const TPoly& l, const ExactScalar& lambda, const TPoly& b)
{
    // a_i = L^{(i)}(lambda) / i!
    std::vector<ExactScalar> a;
    TPoly d = l;
    Rational fact = 1;
    for (std::size_t i = 0; !d.is_zero(); ++i) {
        if (i > 0)
            fact *= static_cast<unsigned long>(i);
        a.push_back(d.eval(lambda) / ExactScalar(fact));
        d = d.derivative();
    }
    if (a.empty() || a[0].is_zero())
        fail(ErrorKind::Resonance, "Resonance at \xce\xbb=" + lambda.str() +
                                       ": L(\xce\xbb) = 0; extend the prefix with this coefficient");
    if (b.is_zero())
        return {};

    // Coefficient of t^k in sum_i a_i v^{(i)} is sum_i a_i v_{k+i} (k+i)!/k!.
    std::size_t deg = static_cast<std::size_t>(b.degree());
    std::vector<ExactScalar> v(deg + 1);
    for (std::size_t k = deg + 1; k-- > 0;) {
        ExactScalar rhs = b.coeff(k);
        Rational falling = 1;
        for (std::size_t i = 1; i < a.size() && k + i <= deg; ++i) {
            falling *= static_cast<unsigned long>(k + i);
            rhs -= a[i] * ExactScalar(falling) * v[k + i];
        }
        v[k] = rhs / a[0];
    }
    return TPoly(std::move(v));
}

namespace {

struct RunResult {
    DulacSeries solution;
    DulacSeries residual;
    std::vector<SolutionStep> history;
    std::optional<std::string> stalled; // NonProgressingResidual message
};

RunResult run_recursion(const ODESpec& f, const DulacSeries& prefix, const LinearData& lin,
                        const Rational& target)
{
    const auto& basis = *prefix.basis();
    Rational re_nu = re_value(lin.nu, basis);
    Cutoff work(target + re_nu);

    std::vector<Term> terms = prefix.terms();
    std::optional<Exponent> last;
    if (!terms.empty())
        last = terms.back().exp;

    RunResult out{DulacSeries(prefix.basis()), DulacSeries(prefix.basis()), {}, std::nullopt};
    for (;;) {
        DulacSeries sol = DulacSeries::from_terms(prefix.basis(), terms);
        DulacSeries residual = substitute(f, sol, work);
        out.residual = residual;
        out.solution = sol;
        if (residual.is_zero())
            break;
        const Term& lead = residual.terms().front();
        Exponent lambda = lead.exp - lin.nu;
        if (!below(lambda, Cutoff(target), basis))
            break;
        if (last && compare(lambda, *last, basis) <= 0) {
            out.stalled = "residual leading exponent gives lambda = " + exponent_text(lambda, basis) +
                          ", not beyond the last solved exponent " + exponent_text(*last, basis) +
                          "; the prefix is inconsistent with F";
            return out;
        }
        TPoly b = -lead.coeff;
        TPoly c = solve_coefficient(lin.L, value(lambda, basis), b);
        out.history.push_back({lambda, c, b, residual.val()});
        terms.push_back({lambda, c});
        last = lambda;
    }

    Cutoff known = min(Cutoff(target), out.residual.cutoff() - re_nu);
    out.solution = out.solution.clip(known);
    return out;
}

} // namespace

SolutionState extend(const ODESpec& f, const DulacSeries& prefix, const Rational& target)
{
    DulacSeries start = DulacSeries::from_terms(prefix.basis(), prefix.terms());
    LinearData lin = extract_linearization(f, start);

    for (int attempt = 0; attempt < 2; ++attempt) {
        RunResult run = run_recursion(f, start, lin, target);
        DulacSeries reached = DulacSeries::from_terms(prefix.basis(), run.solution.terms());
        LinearData after = extract_linearization(f, reached);
        bool same = after.same_leading(lin);
        if (!run.stalled && same) {
            return SolutionState{std::move(run.solution), start.size(), std::move(after),
                                 std::move(run.residual), std::move(run.history), attempt > 0};
        }
        if (run.stalled && (same || attempt > 0))
            fail(ErrorKind::NonProgressingResidual, *run.stalled);
        if (attempt > 0)
            fail(ErrorKind::LinearDataDrift, "leading linear data (nu, A, ell) changed again after restart; "
                                             "the prefix is too short for this equation");
        // Restart once with the data read off the longer series.
        lin = std::move(after);
    }
    fail(ErrorKind::LinearDataDrift, "unreachable");
}

namespace {

// (lambda + delta) applied to a series: term (mu, c) -> (lambda + mu + d/dt) c.
DulacSeries shifted_delta(const DulacSeries& s, const ExactScalar& lambda)
{
    std::vector<Term> out;
    for (const auto& t : s.terms())
        out.push_back({t.exp, shifted_derivative(t.coeff, lambda + value(t.exp, *s.basis()))});
    return DulacSeries::from_terms(s.basis(), std::move(out), s.cutoff());
}

void enumerate(unsigned vars, unsigned long max_total, std::vector<unsigned long>& cur, std::size_t pos,
               std::vector<std::vector<unsigned long>>& out)
{
    if (pos == vars) {
        out.push_back(cur);
        return;
    }
    unsigned long used = 0;
    for (std::size_t k = 0; k < pos; ++k)
        used += cur[k];
    for (unsigned long v = 0; used + v <= max_total; ++v) {
        cur[pos] = v;
        enumerate(vars, max_total, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

bool has_nonpositive_exponent(const DulacSeries& s)
{
    for (const auto& t : s.terms()) {
        auto sign = re_sign(t.exp, Rational(0), *s.basis());
        if (!sign || *sign <= 0)
            return true;
    }
    return false;
}

std::string q_text(const std::vector<unsigned long>& q)
{
    std::string out = "(";
    for (std::size_t k = 0; k < q.size(); ++k)
        out += (k ? "," : "") + std::to_string(q[k]);
    return out + ")";
}

} // namespace

ReducedEquation reduce(const ODESpec& f, const DulacSeries& prefix, std::size_t m, const Slope& s)
{
    if (m == 0 || m > prefix.size())
        fail(ErrorKind::Schema, "split index m = " + std::to_string(m) + " outside 1.." +
                                    std::to_string(prefix.size()));
    const BasisPtr& basis = prefix.basis();
    DulacSeries phi_m = exact_prefix(prefix, m);
    LinearData lin = extract_linearization(f, phi_m);
    apply_slope(lin, s);

    ReducedEquation red;
    red.basis = basis;
    red.n = f.n();
    red.m = m;
    red.lambda_m = phi_m.terms().back().exp;
    red.nu = lin.nu;
    red.s = s;
    red.tau = lin.ell == lin.n ? Exponent::zero(basis->size()) : embed(ExactScalar(*lin.tau), *basis);
    red.L = lin.L;

    std::optional<Exponent> next;
    if (m < prefix.size())
        next = prefix.terms()[m].exp;
    red.conditions = check_conditions(lin, phi_m, next);
    for (const auto& note : red.conditions.notes)
        red.flags.push_back(note);

    Exponent neg_nu = Exponent::zero(basis->size()) - lin.nu;
    for (unsigned j = 0; j <= f.n(); ++j) {
        std::vector<unsigned long> e(f.n() + 1, 0);
        e[j] = 1;
        DulacSeries fj = substitute(taylor_coefficient(f, e), phi_m);
        DulacSeries a = DulacSeries::monomial(basis, Exponent::zero(basis->size()), TPoly(lin.A[j]));
        DulacSeries lt = sub(fj.shifted(neg_nu), a);
        if (has_nonpositive_exponent(lt))
            red.flags.push_back("Ltilde_" + std::to_string(j) + " has a term with nonpositive real exponent");
        if (lin.ell < lin.n && j > lin.ell && lin.nu_j[j]) {
            Exponent mu = *lin.nu_j[j] - lin.nu;
            Rational need = Rational(static_cast<long>(j - lin.ell)) * s.value;
            auto sign = re_sign(mu, need, *basis);
            if (!sign || *sign < 0)
                red.flags.push_back("Re mu_" + std::to_string(j) + " < (j - ell) s");
        }
        red.Ltilde.push_back(std::move(lt));
    }

    std::vector<std::vector<unsigned long>> qs;
    std::vector<unsigned long> cur(f.n() + 1, 0);
    enumerate(f.n() + 1, f.y_degree(), cur, 0, qs);
    for (const auto& q : qs) {
        unsigned long total = 0;
        for (auto v : q)
            total += v;
        if (total == 1)
            continue;
        DulacSeries fq = substitute(taylor_coefficient(f, q), phi_m);
        if (fq.is_zero() && total != 0)
            continue;
        Exponent shift = red.lambda_m.scaled(Rational(static_cast<long>(total)) - 1) - lin.nu -
                         red.tau.scaled(Rational(static_cast<long>(total)));
        DulacSeries aq = fq.shifted(shift);
        if (has_nonpositive_exponent(aq))
            red.flags.push_back("a_" + q_text(q) + " has a term with nonpositive real exponent");
        red.N.emplace(q, std::move(aq));
    }
    return red;
}

DulacSeries ReducedEquation::evaluate(const DulacSeries& psi) const
{
    ExactScalar lm = value(lambda_m, *basis);
    std::vector<DulacSeries> d{psi};
    for (unsigned j = 1; j <= n; ++j)
        d.push_back(shifted_delta(d.back(), lm));

    DulacSeries acc(basis);
    for (unsigned j = 0; j <= n; ++j) {
        acc = add(acc, d[j].scaled(L.coeff(j)));
        acc = add(acc, mul(Ltilde[j], d[j]));
    }
    for (const auto& [q, aq] : N) {
        unsigned long total = 0;
        DulacSeries prod = aq;
        for (unsigned j = 0; j <= n; ++j) {
            total += q[j];
            for (unsigned long k = 0; k < q[j]; ++k)
                prod = mul(prod, d[j]);
        }
        acc = add(acc, prod.shifted(tau.scaled(Rational(static_cast<long>(total)))));
    }
    return acc;
}

} // namespace dulac
