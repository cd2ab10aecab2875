#include "dulac/ode.hpp"

#include "dulac/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dulac {

namespace {

bool term_less(const FTerm& a, const FTerm& b)
{
    unsigned long da = a.y_degree(), db = b.y_degree();
    if (da != db)
        return da < db;
    if (a.q != b.q)
        return a.q < b.q;
    return a.p < b.p;
}

mpz_class binomial(unsigned long n, unsigned long k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Shared preconditions; returns the cutoff implied by a declared degree.
Cutoff substitution_cutoff(const ODESpec& f, const DulacSeries& phi)
{
    if (!phi.is_zero()) {
        auto s = re_sign(phi.terms().front().exp, Rational(0), *phi.basis());
        if (!s || *s <= 0)
            fail(ErrorKind::NonpositiveValuation,
                 "substitution requires val(phi) > 0, got " + std::to_string(phi.val()));
    }
    if (!f.degree())
        return Cutoff::infinite();
    Rational m = 1;
    if (auto v = phi.val_bound(); v && *v < 1)
        m = *v;
    return Cutoff(Rational(*f.degree() + 1) * m);
}

DulacSeries x_power(const BasisPtr& basis, unsigned long p, const ExactScalar& c)
{
    return DulacSeries::monomial(basis, embed(ExactScalar(static_cast<long>(p)), *basis), TPoly(c));
}

DulacSeries one(const BasisPtr& basis)
{
    return DulacSeries::monomial(basis, Exponent::zero(basis->size()), TPoly(ExactScalar(1)));
}

} // namespace

unsigned long FTerm::y_degree() const
{
    return std::accumulate(q.begin(), q.end(), 0UL);
}

ODESpec ODESpec::assemble(unsigned n, std::vector<FTerm> terms, std::optional<long> degree)
{
    ODESpec f;
    f.n_ = n;
    f.degree_ = degree;
    std::sort(terms.begin(), terms.end(), term_less);
    f.terms_ = std::move(terms);
    return f;
}

ODESpec ODESpec::create(unsigned n, std::vector<FTerm> terms, std::optional<long> degree)
{
    std::set<std::pair<unsigned long, std::vector<unsigned long>>> seen;
    for (const auto& t : terms) {
        if (t.q.size() != n + 1)
            fail(ErrorKind::Schema, "term y-exponent vector has length " + std::to_string(t.q.size()) +
                                        ", expected n+1 = " + std::to_string(n + 1));
        if (t.coeff.is_zero())
            fail(ErrorKind::Schema, "term with zero coefficient");
        if (t.p == 0 && t.y_degree() == 0)
            fail(ErrorKind::Schema, "F(0, ..., 0) must vanish; constant term " + t.coeff.str() + " given");
        if (!seen.insert({t.p, t.q}).second)
            fail(ErrorKind::Schema, "repeated monomial x^" + std::to_string(t.p) + " in F");
        if (degree && static_cast<long>(t.p + t.y_degree()) > *degree)
            fail(ErrorKind::Schema, "term of total degree " + std::to_string(t.p + t.y_degree()) +
                                        " exceeds the declared degree " + std::to_string(*degree));
    }
    if (degree && *degree < 1)
        fail(ErrorKind::Schema, "declared degree must be at least 1");
    return assemble(n, std::move(terms), degree);
}

unsigned long ODESpec::y_degree() const
{
    unsigned long d = 0;
    for (const auto& t : terms_)
        d = std::max(d, t.y_degree());
    return d;
}

ODESpec partial(const ODESpec& f, unsigned j)
{
    if (j > f.n())
        fail(ErrorKind::Schema, "partial derivative index " + std::to_string(j) + " exceeds n");
    std::vector<FTerm> out;
    for (const auto& t : f.terms()) {
        if (t.q[j] == 0)
            continue;
        FTerm d = t;
        d.coeff *= ExactScalar(static_cast<long>(t.q[j]));
        d.q[j] -= 1;
        out.push_back(std::move(d));
    }
    std::optional<long> deg;
    if (f.degree())
        deg = *f.degree() - 1;
    return ODESpec::assemble(f.n(), std::move(out), deg);
}

ODESpec taylor_coefficient(const ODESpec& f, const std::vector<unsigned long>& q)
{
    if (q.size() != f.n() + 1)
        fail(ErrorKind::Schema, "multi-index length must be n+1");
    std::vector<FTerm> out;
    for (const auto& t : f.terms()) {
        bool ok = true;
        mpz_class w = 1;
        for (std::size_t k = 0; k < q.size() && ok; ++k) {
            if (t.q[k] < q[k])
                ok = false;
            else
                w *= binomial(t.q[k], q[k]);
        }
        if (!ok)
            continue;
        FTerm d = t;
        d.coeff *= ExactScalar(Rational(w));
        for (std::size_t k = 0; k < q.size(); ++k)
            d.q[k] -= q[k];
        out.push_back(std::move(d));
    }
    std::optional<long> deg;
    if (f.degree()) {
        long total = static_cast<long>(std::accumulate(q.begin(), q.end(), 0UL));
        deg = *f.degree() - total;
    }
    return ODESpec::assemble(f.n(), std::move(out), deg);
}

DulacSeries substitute(const ODESpec& f, const DulacSeries& phi, const Cutoff& work_cutoff)
{
    Cutoff limit = min(substitution_cutoff(f, phi), work_cutoff);
    const BasisPtr& basis = phi.basis();

    std::vector<DulacSeries> d; // delta^j phi
    d.push_back(phi.clip(limit));
    for (unsigned j = 1; j <= f.n(); ++j)
        d.push_back(delta(d.back()));

    // powers[j][k] = (delta^j phi)^k, filled on demand
    std::vector<std::vector<DulacSeries>> powers(f.n() + 1);
    auto power = [&](unsigned j, unsigned long k) -> const DulacSeries& {
        auto& pj = powers[j];
        if (pj.empty())
            pj.push_back(one(basis));
        while (pj.size() <= k)
            pj.push_back(mul(pj.back(), d[j], limit));
        return pj[k];
    };

    // Group monomials sharing the same y-exponent q: sum_p c x^p times one
    // cached product of powers.
    std::map<std::vector<unsigned long>, std::vector<const FTerm*>> groups;
    for (const auto& t : f.terms())
        groups[t.q].push_back(&t);

    DulacSeries acc(basis);
    for (const auto& [q, members] : groups) {
        DulacSeries xpoly(basis);
        for (const FTerm* t : members)
            xpoly = add(xpoly, x_power(basis, t->p, t->coeff));
        DulacSeries prod = one(basis);
        for (unsigned j = 0; j <= f.n(); ++j) {
            if (q[j] > 0)
                prod = mul(prod, power(j, q[j]), limit);
        }
        acc = add(acc, mul(xpoly, prod, limit));
    }
    return acc.clip(limit);
}

DulacSeries substitute_direct(const ODESpec& f, const DulacSeries& phi, const Cutoff& work_cutoff)
{
    Cutoff limit = min(substitution_cutoff(f, phi), work_cutoff);
    const BasisPtr& basis = phi.basis();
    DulacSeries acc(basis);
    for (const auto& t : f.terms()) {
        DulacSeries m = x_power(basis, t.p, t.coeff);
        DulacSeries dj = phi;
        for (unsigned j = 0; j <= f.n(); ++j) {
            for (unsigned long k = 0; k < t.q[j]; ++k)
                m = mul(m, dj, limit);
            dj = delta(dj);
        }
        acc = add(acc, m);
    }
    return acc.clip(limit);
}

} // namespace dulac
