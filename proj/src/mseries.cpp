#include "dulac/mseries.hpp"

#include "dulac/error.hpp"

namespace dulac {

MSeries::MSeries(GensPtr gens, Cutoff cutoff) : gens_(std::move(gens)), cutoff_(std::move(cutoff))
{
    if (!gens_)
        fail(ErrorKind::Schema, "multivariate series needs generators");
}

MSeries MSeries::from_terms(GensPtr gens, TermMap terms, Cutoff cutoff)
{
    MSeries out(std::move(gens), std::move(cutoff));
    const auto& basis = *out.gens_->basis();
    for (auto& [m, c] : terms) {
        if (m.size() != out.gens_->kappa())
            fail(ErrorKind::Schema, "multi-index length does not match the number of generators");
        if (total_degree(m) == 0)
            fail(ErrorKind::Schema, "multi-index 0 is not allowed");
        if (c.is_zero() || !below(out.gens_->exponent_of(m), out.cutoff_, basis))
            continue;
        out.terms_.emplace(m, std::move(c));
    }
    return out;
}

TPoly MSeries::coefficient(const MultiIndex& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? TPoly() : it->second;
}

std::optional<Rational> MSeries::val_bound() const
{
    if (terms_.empty())
        return std::nullopt;
    const auto& basis = *gens_->basis();
    std::optional<Exponent> lead;
    for (const auto& [m, c] : terms_) {
        Exponent e = gens_->exponent_of(m);
        if (!lead || compare(e, *lead, basis) < 0)
            lead = std::move(e);
    }
    return re_lower_bound(*lead, basis);
}

MSeries MSeries::operator-() const
{
    MSeries out = *this;
    for (auto& [m, c] : out.terms_)
        c = -c;
    return out;
}

MSeries MSeries::scaled(const ExactScalar& s) const
{
    MSeries out(gens_, cutoff_);
    if (s.is_zero())
        return out;
    for (const auto& [m, c] : terms_)
        out.terms_.emplace(m, c * s);
    return out;
}

MSeries MSeries::times_monomial(const TPoly& a, const MultiIndex& l) const
{
    Exponent shift = gens_->exponent_of(l);
    Cutoff c = cutoff_ + re_lower_bound(shift, *gens_->basis());
    TermMap terms;
    for (const auto& [m, p] : terms_) {
        MultiIndex k = m;
        for (std::size_t j = 0; j < k.size(); ++j)
            k[j] += l[j];
        terms.emplace(std::move(k), p * a);
    }
    return from_terms(gens_, std::move(terms), c);
}

bool operator==(const MSeries& a, const MSeries& b)
{
    return a.gens_->same_as(*b.gens_) && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
}

void MSeries::check_same(const MSeries& o) const
{
    if (!gens_->same_as(*o.gens_))
        fail(ErrorKind::Basis, "multivariate series over different generators");
}

MSeries add(const MSeries& f, const MSeries& g)
{
    f.check_same(g);
    MSeries::TermMap terms = f.terms_;
    for (const auto& [m, c] : g.terms_)
        terms[m] += c;
    return MSeries::from_terms(f.gens_, std::move(terms), min(f.cutoff_, g.cutoff_));
}

MSeries sub(const MSeries& f, const MSeries& g)
{
    return add(f, -g);
}

MSeries mul(const MSeries& f, const MSeries& g, const Cutoff& limit)
{
    f.check_same(g);
    Cutoff c;
    if (f.is_zero() || g.is_zero())
        c = min(f.cutoff_, g.cutoff_);
    else
        c = min(f.cutoff_ + *g.val_bound(), g.cutoff_ + *f.val_bound());
    c = min(c, limit);
    MSeries::TermMap terms;
    for (const auto& [a, ca] : f.terms_) {
        for (const auto& [b, cb] : g.terms_) {
            MultiIndex m = a;
            for (std::size_t j = 0; j < m.size(); ++j)
                m[j] += b[j];
            terms[m] += ca * cb;
        }
    }
    return MSeries::from_terms(f.gens_, std::move(terms), c);
}

MSeries iota(const DulacSeries& f, GensPtr gens)
{
    if (!f.basis()->same_as(*gens->basis()))
        fail(ErrorKind::Basis, "series and generators use different bases");
    MSeries::TermMap terms;
    for (const auto& t : f.terms()) {
        auto m = decompose(t.exp, *gens);
        if (!m) {
            std::string text;
            if (auto v = exact_value(t.exp, *f.basis()))
                text = v->str();
            else
                for (const auto& c : to_strings(t.exp))
                    text += (text.empty() ? "[" : ", ") + c;
            if (text.front() == '[')
                text += "]";
            fail(ErrorKind::ExponentOutsideSemigroup, "exponent " + text + " is not in the semigroup");
        }
        terms.emplace(std::move(*m), t.coeff);
    }
    return MSeries::from_terms(std::move(gens), std::move(terms), f.cutoff());
}

DulacSeries iota_inv(const MSeries& g)
{
    std::vector<Term> terms;
    for (const auto& [m, c] : g.terms())
        terms.push_back({g.gens()->exponent_of(m), c});
    return DulacSeries::from_terms(g.gens()->basis(), std::move(terms), g.cutoff());
}

MSeries tail_image(const DulacSeries& solution, std::size_t m, GensPtr gens)
{
    const auto& terms = solution.terms();
    if (m == 0 || m > terms.size())
        fail(ErrorKind::Schema, "prefix length m must lie in 1.." + std::to_string(terms.size()));
    const Exponent& lm = terms[m - 1].exp;
    std::vector<Term> tail;
    for (std::size_t k = m; k < terms.size(); ++k)
        tail.push_back({terms[k].exp - lm, terms[k].coeff});
    Cutoff c = solution.cutoff() - re_lower_bound(lm, *solution.basis());
    return iota(DulacSeries::from_terms(solution.basis(), std::move(tail), c), std::move(gens));
}

namespace {

MSeries apply_shifted(const MSeries& g, const std::optional<Exponent>& lambda)
{
    const auto& basis = *g.gens()->basis();
    MSeries::TermMap terms;
    for (const auto& [m, c] : g.terms()) {
        Exponent e = g.gens()->exponent_of(m);
        if (lambda)
            e += *lambda;
        terms.emplace(m, shifted_derivative(c, value(e, basis)));
    }
    return MSeries::from_terms(g.gens(), std::move(terms), g.cutoff());
}

} // namespace

MSeries hat_delta(const MSeries& g)
{
    return apply_shifted(g, std::nullopt);
}

MSeries hat_delta_shifted(const MSeries& g, const Exponent& lambda)
{
    return apply_shifted(g, lambda);
}

Rational fit_degree_K(const MSeries& g)
{
    Rational best = 0;
    for (const auto& [m, c] : g.terms()) {
        Rational q(c.degree() > 0 ? c.degree() : 0, total_degree(m));
        q.canonicalize();
        if (q > best)
            best = q;
    }
    return best;
}

} // namespace dulac
