#include "dulac/dulac_series.hpp"

#include "dulac/error.hpp"

#include <algorithm>
#include <map>

namespace dulac {

namespace {

struct CoordLess {
    bool operator()(const Exponent& a, const Exponent& b) const { return a.coords < b.coords; }
};

using Accumulator = std::map<Exponent, TPoly, CoordLess>;

std::vector<Term> sorted_terms(Accumulator&& acc, const Cutoff& cutoff, const ExponentBasis& basis)
{
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [e, c] : acc) {
        if (!c.is_zero() && below(e, cutoff, basis))
            out.push_back({e, std::move(c)});
    }
    std::sort(out.begin(), out.end(),
              [&](const Term& a, const Term& b) { return compare(a.exp, b.exp, basis) < 0; });
    return out;
}

} // namespace

DulacSeries::DulacSeries(BasisPtr basis, Cutoff cutoff) : basis_(std::move(basis)), cutoff_(std::move(cutoff))
{
    if (!basis_)
        fail(ErrorKind::Basis, "series requires an exponent basis");
}

DulacSeries DulacSeries::from_terms(BasisPtr basis, std::vector<Term> terms, Cutoff cutoff)
{
    DulacSeries s(std::move(basis), std::move(cutoff));
    Accumulator acc;
    for (auto& t : terms) {
        if (t.exp.coords.size() != s.basis_->size())
            fail(ErrorKind::Basis, "term exponent dimension does not match the basis");
        acc[t.exp] += t.coeff;
    }
    s.terms_ = sorted_terms(std::move(acc), s.cutoff_, *s.basis_);
    return s;
}

DulacSeries DulacSeries::monomial(BasisPtr basis, Exponent e, TPoly c, Cutoff cutoff)
{
    std::vector<Term> t;
    t.push_back({std::move(e), std::move(c)});
    return from_terms(std::move(basis), std::move(t), std::move(cutoff));
}

void DulacSeries::check_same_basis(const DulacSeries& o) const
{
    if (!basis_->same_as(*o.basis_))
        fail(ErrorKind::Basis, "series are over different exponent bases");
}

TPoly DulacSeries::coefficient(const Exponent& e) const
{
    for (const auto& t : terms_) {
        if (t.exp == e)
            return t.coeff;
    }
    return {};
}

double DulacSeries::val() const
{
    if (terms_.empty())
        return std::numeric_limits<double>::infinity();
    return re_double(terms_.front().exp, *basis_);
}

std::optional<Rational> DulacSeries::val_bound() const
{
    if (terms_.empty())
        return std::nullopt;
    return re_lower_bound(terms_.front().exp, *basis_);
}

DulacSeries DulacSeries::truncate(const Cutoff& c) const
{
    if (cutoff_ < c)
        fail(ErrorKind::CutoffIncrease, "cannot truncate a series with cutoff " +
                                            std::to_string(cutoff_.to_double()) + " to the larger cutoff " +
                                            std::to_string(c.to_double()));
    return clip(c);
}

DulacSeries DulacSeries::clip(const Cutoff& c) const
{
    DulacSeries out(basis_, min(cutoff_, c));
    for (const auto& t : terms_) {
        if (!below(t.exp, out.cutoff_, *basis_))
            break;
        out.terms_.push_back(t);
    }
    return out;
}

DulacSeries DulacSeries::operator-() const
{
    DulacSeries out = *this;
    for (auto& t : out.terms_)
        t.coeff = -t.coeff;
    return out;
}

DulacSeries DulacSeries::scaled(const ExactScalar& s) const
{
    if (s.is_zero())
        return DulacSeries(basis_, cutoff_);
    DulacSeries out = *this;
    for (auto& t : out.terms_)
        t.coeff *= s;
    return out;
}

DulacSeries DulacSeries::shifted(const Exponent& e) const
{
    // Conservative: the cutoff moves by a lower bound of Re e.
    DulacSeries out(basis_, cutoff_ + re_lower_bound(e, *basis_));
    for (const auto& t : terms_) {
        Exponent moved = t.exp + e;
        if (below(moved, out.cutoff_, *basis_))
            out.terms_.push_back({std::move(moved), t.coeff});
    }
    return out;
}

bool operator==(const DulacSeries& a, const DulacSeries& b)
{
    return a.basis_->same_as(*b.basis_) && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
}

DulacSeries add(const DulacSeries& f, const DulacSeries& g)
{
    f.check_same_basis(g);
    DulacSeries out(f.basis_, min(f.cutoff_, g.cutoff_));
    const auto& basis = *f.basis_;
    auto i = f.terms_.begin(), j = g.terms_.begin();
    auto push = [&](Exponent e, TPoly c) {
        if (!c.is_zero() && below(e, out.cutoff_, basis))
            out.terms_.push_back({std::move(e), std::move(c)});
    };
    while (i != f.terms_.end() || j != g.terms_.end()) {
        if (j == g.terms_.end()) {
            push(i->exp, i->coeff);
            ++i;
        } else if (i == f.terms_.end()) {
            push(j->exp, j->coeff);
            ++j;
        } else {
            auto ord = compare(i->exp, j->exp, basis);
            if (ord < 0) {
                push(i->exp, i->coeff);
                ++i;
            } else if (ord > 0) {
                push(j->exp, j->coeff);
                ++j;
            } else {
                push(i->exp, i->coeff + j->coeff);
                ++i;
                ++j;
            }
        }
    }
    return out;
}

DulacSeries sub(const DulacSeries& f, const DulacSeries& g)
{
    return add(f, -g);
}

DulacSeries mul(const DulacSeries& f, const DulacSeries& g, const Cutoff& limit)
{
    f.check_same_basis(g);
    const auto& basis = *f.basis_;
    Cutoff c;
    if (f.is_zero() || g.is_zero()) {
        c = min(f.cutoff_, g.cutoff_);
    } else {
        c = min(f.cutoff_ + *g.val_bound(), g.cutoff_ + *f.val_bound());
    }
    c = min(c, limit);
    DulacSeries out(f.basis_, c);
    if (f.is_zero() || g.is_zero())
        return out;

    // For fixed a, Re(a + b) is nondecreasing along g.
    Accumulator acc;
    for (const auto& a : f.terms_) {
        for (const auto& b : g.terms_) {
            Exponent e = a.exp + b.exp;
            if (!below(e, c, basis))
                break;
            acc[e] += a.coeff * b.coeff;
        }
    }
    out.terms_ = sorted_terms(std::move(acc), c, basis);
    return out;
}

DulacSeries delta(const DulacSeries& f)
{
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        TPoly c = shifted_derivative(t.coeff, value(t.exp, *f.basis()));
        if (!c.is_zero())
            terms.push_back({t.exp, std::move(c)});
    }
    return DulacSeries::from_terms(f.basis(), std::move(terms), f.cutoff());
}

} // namespace dulac
