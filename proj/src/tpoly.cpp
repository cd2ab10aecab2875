#include "dulac/tpoly.hpp"

#include "dulac/error.hpp"

namespace dulac {

TPoly::TPoly(ExactScalar c) : c_{std::move(c)}
{
    strip();
}

TPoly::TPoly(std::vector<ExactScalar> coeffs) : c_(std::move(coeffs))
{
    strip();
}

TPoly TPoly::monomial(std::size_t k, ExactScalar c)
{
    std::vector<ExactScalar> v(k + 1);
    v[k] = std::move(c);
    return TPoly(std::move(v));
}

void TPoly::strip()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

ExactScalar TPoly::coeff(std::size_t k) const
{
    return k < c_.size() ? c_[k] : ExactScalar();
}

TPoly TPoly::derivative() const
{
    if (c_.size() <= 1)
        return {};
    std::vector<ExactScalar> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
        d[k - 1] = c_[k] * ExactScalar(static_cast<long>(k));
    return TPoly(std::move(d));
}

ExactScalar TPoly::eval(const ExactScalar& x) const
{
    ExactScalar acc;
    for (std::size_t k = c_.size(); k-- > 0;)
        acc = acc * x + c_[k];
    return acc;
}

TPoly TPoly::operator-() const
{
    TPoly r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

TPoly& TPoly::operator+=(const TPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k)
        c_[k] += o.c_[k];
    strip();
    return *this;
}

TPoly& TPoly::operator-=(const TPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k)
        c_[k] -= o.c_[k];
    strip();
    return *this;
}

TPoly& TPoly::operator*=(const ExactScalar& s)
{
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_)
        c *= s;
    return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<ExactScalar> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            out[i + j] += a.c_[i] * b.c_[j];
    }
    return TPoly(std::move(out));
}

std::vector<std::string> TPoly::to_strings() const
{
    std::vector<std::string> out;
    for (const auto& c : c_)
        out.push_back(c.str());
    return out;
}

TPoly TPoly::parse(const std::vector<std::string>& coeffs)
{
    std::vector<ExactScalar> c;
    for (const auto& s : coeffs)
        c.push_back(ExactScalar::parse(s));
    return TPoly(std::move(c));
}

Real poly_norm(const TPoly& p, const Real& r)
{
    if (!(r > Real(1L)))
        fail(ErrorKind::Domain, "norm parameter R must exceed 1, got " + r.str(6));
    Real acc;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
        const auto& c = p.coeffs()[k];
        acc = acc * r + hypot(Real(c.re()), Real(c.im()));
    }
    return acc;
}

TPoly shifted_derivative(const TPoly& p, const ExactScalar& lambda)
{
    return p * lambda + p.derivative();
}

TPoly apply_operator(const TPoly& l, const ExactScalar& lambda, const TPoly& v)
{
    TPoly acc;
    for (std::size_t k = l.coeffs().size(); k-- > 0;)
        acc = shifted_derivative(acc, lambda) + v * l.coeffs()[k];
    return acc;
}

} // namespace dulac
