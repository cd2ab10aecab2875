#include "dulac/semigroup.hpp"

#include "dulac/dulac_series.hpp"
#include "dulac/error.hpp"
#include "dulac/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace dulac {

unsigned long total_degree(const MultiIndex& m)
{
    return std::accumulate(m.begin(), m.end(), 0UL);
}

namespace {

std::string exponent_text(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return v->str();
    std::string out = "[";
    for (const auto& c : to_strings(e))
        out += (out.size() > 1 ? ", " : "") + c;
    return out + "]";
}

} // namespace

GensPtr Generators::validate(std::vector<Exponent> r, BasisPtr basis)
{
    if (r.empty())
        fail(ErrorKind::Schema, "at least one generator is required");
    std::shared_ptr<Generators> g(new Generators());
    g->basis_ = std::move(basis);
    const auto& b = *g->basis_;
    for (std::size_t j = 0; j < r.size(); ++j) {
        if (r[j].coords.size() != b.size())
            fail(ErrorKind::Basis, "generator r_" + std::to_string(j + 1) + " has wrong dimension");
        auto s = re_sign(r[j], Rational(0), b);
        if (!s || *s <= 0)
            fail(ErrorKind::NonpositiveRealPart,
                 "generator r_" + std::to_string(j + 1) + " = " + exponent_text(r[j], b) +
                     (s ? " has nonpositive real part" : " has a real part that cannot be signed"));
    }
    g->matrix_.assign(b.size(), std::vector<Rational>(r.size()));
    for (std::size_t j = 0; j < r.size(); ++j)
        for (std::size_t i = 0; i < b.size(); ++i)
            g->matrix_[i][j] = r[j].coords[i];
    if (linalg::rank(g->matrix_) != r.size()) {
        auto m = linalg::primitive_integer(*linalg::null_vector(g->matrix_));
        std::string rel;
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 0)
                continue;
            mpz_class a = abs(m[j]);
            if (rel.empty())
                rel += m[j] < 0 ? "-" : "";
            else
                rel += m[j] < 0 ? " - " : " + ";
            rel += a.get_str() + "*r_" + std::to_string(j + 1);
        }
        fail(ErrorKind::DependentGenerators, "generators are Z-dependent: " + rel + " = 0");
    }
    g->r_ = std::move(r);
    return g;
}

Exponent Generators::exponent_of(const MultiIndex& m) const
{
    if (m.size() != r_.size())
        fail(ErrorKind::Schema, "multi-index has " + std::to_string(m.size()) + " entries, expected " +
                                    std::to_string(r_.size()));
    Exponent e = Exponent::zero(basis_->size());
    for (std::size_t j = 0; j < m.size(); ++j)
        if (m[j] != 0)
            e += r_[j].scaled(Rational(m[j]));
    return e;
}

Rational Generators::beta() const
{
    std::optional<Rational> best;
    for (const auto& r : r_) {
        Rational lo = re_lower_bound(r, *basis_);
        if (sgn(lo) <= 0)
            lo = re_real(r, *basis_).to_rational();
        if (!best || lo < *best)
            best = lo;
    }
    return *best;
}

bool Generators::same_as(const Generators& o) const
{
    return this == &o || (basis_->same_as(*o.basis_) && r_ == o.r_);
}

std::optional<MultiIndex> decompose(const Exponent& lambda, const Generators& gens)
{
    if (lambda.coords.size() != gens.basis()->size())
        fail(ErrorKind::Basis, "exponent dimension does not match the generators' basis");
    auto sol = linalg::solve_unique(gens.matrix(), lambda.coords);
    if (!sol)
        return std::nullopt;
    MultiIndex m;
    for (const auto& q : *sol) {
        if (q.get_den() != 1 || sgn(q) < 0 || !q.get_num().fits_ulong_p())
            return std::nullopt;
        m.push_back(q.get_num().get_ui());
    }
    if (total_degree(m) == 0)
        return std::nullopt;
    return m;
}

std::vector<MultiIndex> minimal_elements(const Generators& gens, const Rational& tau,
                                         std::size_t max_points)
{
    const auto& basis = *gens.basis();
    std::size_t kappa = gens.kappa();
    MultiIndex hi(kappa);
    double points = 1;
    for (std::size_t j = 0; j < kappa; ++j) {
        Rational lo = re_lower_bound(gens.r()[j], basis);
        if (sgn(lo) <= 0)
            lo = re_real(gens.r()[j], basis).to_rational();
        Rational t = sgn(tau) > 0 ? Rational(tau / lo) : Rational(0);
        mpz_class fl = t.get_num() / t.get_den();
        hi[j] = fl.get_ui() + 1;
        points *= static_cast<double>(hi[j] + 1);
    }
    if (points > static_cast<double>(max_points))
        fail(ErrorKind::Domain, "minimal-element search box too large (" + std::to_string(points) + " points)");

    auto above = [&](const MultiIndex& m) {
        auto s = re_sign(gens.exponent_of(m), tau, basis);
        if (!s)
            fail(ErrorKind::UndecidableComparison, "cannot compare Re<m, r> with tau");
        return *s > 0;
    };

    std::vector<MultiIndex> out;
    MultiIndex m(kappa, 0);
    while (true) {
        std::size_t j = 0;
        while (j < kappa && m[j] == hi[j])
            m[j++] = 0;
        if (j == kappa)
            break;
        ++m[j];
        if (!above(m))
            continue;
        bool minimal = true;
        for (std::size_t i = 0; i < kappa && minimal; ++i) {
            if (m[i] == 0)
                continue;
            MultiIndex d = m;
            --d[i];
            if (total_degree(d) > 0 && above(d))
                minimal = false;
        }
        if (minimal)
            out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

KcalInfo compute_kcal(const Rational& k_fit, const Generators& gens, const Rational& tau)
{
    KcalInfo info;
    info.K = k_fit;
    info.minimal = minimal_elements(gens, tau);
    for (const auto& m : info.minimal)
        info.max_norm = std::max(info.max_norm, total_degree(m));
    info.Kcal = 2 * k_fit * Rational(info.max_norm);
    info.Kcal.canonicalize();
    return info;
}

std::vector<std::size_t> gap_violations(const DulacSeries& solution, std::size_t m,
                                        const Generators& gens)
{
    if (!solution.basis()->same_as(*gens.basis()))
        fail(ErrorKind::Basis, "solution and generators use different bases");
    const auto& terms = solution.terms();
    if (m == 0 || m > terms.size())
        fail(ErrorKind::Schema, "prefix length m must lie in 1.." + std::to_string(terms.size()));
    std::vector<std::size_t> bad;
    const Exponent& lm = terms[m - 1].exp;
    for (std::size_t k = m; k < terms.size(); ++k) {
        if (!decompose(terms[k].exp - lm, gens))
            bad.push_back(k + 1);
    }
    return bad;
}

GeneratorSuggestion suggest_generators(const DulacSeries& prefix, const std::optional<Rational>& tau)
{
    const auto& basis = *prefix.basis();
    std::vector<Exponent> cand;
    try {
        cand.push_back(embed(ExactScalar(1), basis));
    } catch (const Error&) {
    }
    const auto& terms = prefix.terms();
    for (const auto& t : terms)
        cand.push_back(t.exp);
    for (std::size_t k = 1; k < terms.size(); ++k)
        cand.push_back(terms[k].exp - terms[k - 1].exp);
    if (tau && sgn(*tau) > 0) {
        try {
            cand.push_back(embed(ExactScalar(*tau), basis));
        } catch (const Error&) {
        }
    }
    std::vector<Exponent> pos;
    for (auto& c : cand) {
        auto s = re_sign(c, Rational(0), basis);
        if (s && *s > 0 && std::find(pos.begin(), pos.end(), c) == pos.end())
            pos.push_back(std::move(c));
    }

    GeneratorSuggestion out;
    out.notes.push_back("heuristic: candidates are 1, prefix exponents, consecutive gaps and tau");
    for (const auto& c : pos) {
        if (!out.r.empty()) {
            auto g = Generators::validate(out.r, prefix.basis());
            if (decompose(c, *g))
                continue;
        }
        auto trial = out.r;
        trial.push_back(c);
        try {
            (void)Generators::validate(trial, prefix.basis());
            out.r = std::move(trial);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DependentGenerators)
                throw;
            out.notes.push_back("candidate " + exponent_text(c, basis) +
                                " is not covered and would make the generators dependent");
        }
    }
    return out;
}

} // namespace dulac
