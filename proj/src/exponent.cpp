#include "dulac/exponent.hpp"

#include "dulac/error.hpp"
#include "dulac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dulac {

namespace {

BasisComponent parse_component(const std::string& text, const std::string& literal)
{
    BasisComponent c;
    try {
        c.value = parse_rational(text);
        return c;
    } catch (const Error&) {
    }
    try {
        (void)Real::from_decimal(text);
    } catch (const Error&) {
        fail(ErrorKind::Parse, "basis entry '" + literal + "': invalid component '" + text + "'");
    }
    c.exact = false;
    c.decimal = text;
    return c;
}

bool same_component(const BasisComponent& a, const BasisComponent& b)
{
    if (a.exact != b.exact)
        return false;
    return a.exact ? a.value == b.value : a.decimal == b.decimal;
}

// Sign of sum_k d_k * component_k - offset, escalating precision for decimal
// components.
std::optional<int> combination_sign(const std::vector<Rational>& d, const ExponentBasis& basis,
                                    bool imag, const Rational& offset)
{
    Rational exact = -offset;
    bool inexact = false;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (sgn(d[k]) == 0)
            continue;
        const auto& comp = imag ? basis.entry(k).im : basis.entry(k).re;
        if (comp.exact)
            exact += d[k] * comp.value;
        else
            inexact = true;
    }
    if (!inexact)
        return sgn(exact);

    for (unsigned prec = basis.precision();; prec = std::min(prec * 2, basis.max_precision())) {
        ScopedPrecision scope(prec);
        Interval acc = Interval::point(exact);
        for (std::size_t k = 0; k < d.size(); ++k) {
            const auto& comp = imag ? basis.entry(k).im : basis.entry(k).re;
            if (sgn(d[k]) != 0 && !comp.exact)
                acc += comp.enclosure().scaled(d[k]);
        }
        if (int s = acc.certain_sign(); s != 0)
            return s;
        if (prec >= basis.max_precision())
            return std::nullopt;
    }
}

Interval enclosure_of(const Exponent& e, const ExponentBasis& basis, bool imag)
{
    ScopedPrecision scope(basis.precision());
    Rational exact = 0;
    for (std::size_t k = 0; k < e.coords.size(); ++k) {
        const auto& comp = imag ? basis.entry(k).im : basis.entry(k).re;
        if (comp.exact)
            exact += e.coords[k] * comp.value;
    }
    Interval acc = Interval::point(exact);
    for (std::size_t k = 0; k < e.coords.size(); ++k) {
        const auto& comp = imag ? basis.entry(k).im : basis.entry(k).re;
        if (!comp.exact && sgn(e.coords[k]) != 0)
            acc += comp.enclosure().scaled(e.coords[k]);
    }
    return acc;
}

void check_dim(const Exponent& e, const ExponentBasis& basis)
{
    if (e.coords.size() != basis.size())
        fail(ErrorKind::Basis, "exponent has " + std::to_string(e.coords.size()) +
                                   " coordinates, basis has " + std::to_string(basis.size()));
}

} // namespace

Interval BasisComponent::enclosure() const
{
    return exact ? Interval::point(value) : Interval::decimal(decimal);
}

std::shared_ptr<const ExponentBasis> ExponentBasis::create(const std::vector<std::string>& literals,
                                                           unsigned precision, unsigned max_precision)
{
    if (literals.empty())
        fail(ErrorKind::Basis, "exponent basis must be nonempty");
    if (precision < 64 || precision > max_precision)
        fail(ErrorKind::Basis, "basis precision must lie in [64, max_precision]");

    std::shared_ptr<ExponentBasis> basis(new ExponentBasis());
    basis->precision_ = precision;
    basis->max_precision_ = max_precision;
    linalg::Matrix exact_rows;
    for (const auto& lit : literals) {
        auto [re, im] = split_complex_literal(lit);
        BasisEntry e{lit, parse_component(re, lit), parse_component(im, lit)};
        for (const auto& prev : basis->entries_) {
            if (same_component(prev.re, e.re) && same_component(prev.im, e.im))
                fail(ErrorKind::Basis, "duplicate basis entry '" + lit + "'");
        }
        if (e.exact()) {
            if (sgn(e.re.value) == 0 && sgn(e.im.value) == 0)
                fail(ErrorKind::Basis, "basis entry '" + lit + "' is zero");
            exact_rows.push_back({e.re.value, e.im.value});
        }
        basis->entries_.push_back(std::move(e));
    }
    if (linalg::rank(exact_rows) != exact_rows.size())
        fail(ErrorKind::Basis, "exact basis entries are linearly dependent over Q");
    return basis;
}

std::shared_ptr<const ExponentBasis> ExponentBasis::unit()
{
    static const auto basis = create({"1"});
    return basis;
}

std::vector<std::string> ExponentBasis::literals() const
{
    std::vector<std::string> out;
    for (const auto& e : entries_)
        out.push_back(e.literal);
    return out;
}

bool ExponentBasis::same_as(const ExponentBasis& o) const
{
    if (this == &o)
        return true;
    if (entries_.size() != o.entries_.size())
        return false;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (!same_component(entries_[k].re, o.entries_[k].re) ||
            !same_component(entries_[k].im, o.entries_[k].im))
            return false;
    }
    return true;
}

bool Exponent::is_zero() const
{
    return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Exponent& Exponent::operator+=(const Exponent& o)
{
    if (coords.size() != o.coords.size())
        fail(ErrorKind::Basis, "exponent dimension mismatch");
    for (std::size_t k = 0; k < coords.size(); ++k)
        coords[k] += o.coords[k];
    return *this;
}

Exponent& Exponent::operator-=(const Exponent& o)
{
    if (coords.size() != o.coords.size())
        fail(ErrorKind::Basis, "exponent dimension mismatch");
    for (std::size_t k = 0; k < coords.size(); ++k)
        coords[k] -= o.coords[k];
    return *this;
}

Exponent Exponent::scaled(const Rational& q) const
{
    Exponent out = *this;
    for (auto& c : out.coords)
        c *= q;
    return out;
}

std::optional<ExactScalar> exact_value(const Exponent& e, const ExponentBasis& basis)
{
    check_dim(e, basis);
    ExactScalar v;
    for (std::size_t k = 0; k < e.coords.size(); ++k) {
        if (sgn(e.coords[k]) == 0)
            continue;
        const auto& entry = basis.entry(k);
        if (!entry.exact())
            return std::nullopt;
        v += ExactScalar(e.coords[k] * entry.re.value, e.coords[k] * entry.im.value);
    }
    return v;
}

ExactScalar value(const Exponent& e, const ExponentBasis& basis)
{
    auto v = exact_value(e, basis);
    if (!v) {
        std::string coords;
        for (const auto& c : to_strings(e))
            coords += (coords.empty() ? "" : ", ") + c;
        fail(ErrorKind::InexactExponent,
             "exponent [" + coords + "] uses a decimal basis entry; its exact value is unavailable");
    }
    return *v;
}

Exponent embed(const ExactScalar& v, const ExponentBasis& basis)
{
    std::vector<std::size_t> exact_idx;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis.entry(k).exact())
            exact_idx.push_back(k);
    }
    linalg::Matrix a(2, std::vector<Rational>(exact_idx.size()));
    for (std::size_t j = 0; j < exact_idx.size(); ++j) {
        a[0][j] = basis.entry(exact_idx[j]).re.value;
        a[1][j] = basis.entry(exact_idx[j]).im.value;
    }
    std::optional<std::vector<Rational>> sol;
    if (!exact_idx.empty())
        sol = linalg::solve_unique(a, {v.re(), v.im()});
    else if (v.is_zero())
        sol = std::vector<Rational>{};
    if (!sol)
        fail(ErrorKind::Basis, "value " + v.str() + " is not in the rational span of the basis");
    Exponent e = Exponent::zero(basis.size());
    for (std::size_t j = 0; j < exact_idx.size(); ++j)
        e.coords[exact_idx[j]] = (*sol)[j];
    return e;
}

Interval re_enclosure(const Exponent& e, const ExponentBasis& basis)
{
    check_dim(e, basis);
    return enclosure_of(e, basis, false);
}

Interval im_enclosure(const Exponent& e, const ExponentBasis& basis)
{
    check_dim(e, basis);
    return enclosure_of(e, basis, true);
}

double re_double(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return v->re().get_d();
    ScopedPrecision scope(basis.precision());
    return re_enclosure(e, basis).mid().to_double();
}

double im_double(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return v->im().get_d();
    ScopedPrecision scope(basis.precision());
    return im_enclosure(e, basis).mid().to_double();
}

Real re_real(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return Real(v->re());
    ScopedPrecision scope(basis.precision());
    return re_enclosure(e, basis).mid();
}

Rational re_lower_bound(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return v->re();
    ScopedPrecision scope(basis.precision());
    return re_enclosure(e, basis).lo.to_rational();
}

std::optional<int> re_sign(const Exponent& e, const Rational& bound, const ExponentBasis& basis)
{
    check_dim(e, basis);
    return combination_sign(e.coords, basis, false, bound);
}

std::strong_ordering compare(const Exponent& a, const Exponent& b, const ExponentBasis& basis)
{
    check_dim(a, basis);
    check_dim(b, basis);
    if (a == b)
        return std::strong_ordering::equal;
    Exponent d = a - b;
    for (bool imag : {false, true}) {
        auto s = combination_sign(d.coords, basis, imag, Rational(0));
        if (!s) {
            fail(ErrorKind::UndecidableComparison,
                 std::string("cannot separate ") + (imag ? "imaginary" : "real") +
                     " parts at " + std::to_string(basis.max_precision()) +
                     " bits; basis entries too close or not Q-independent");
        }
        if (*s < 0)
            return std::strong_ordering::less;
        if (*s > 0)
            return std::strong_ordering::greater;
    }
    fail(ErrorKind::UndecidableComparison, "distinct coordinates with identical value; basis is not Q-independent");
}

std::vector<std::string> to_strings(const Exponent& e)
{
    std::vector<std::string> out;
    for (const auto& c : e.coords)
        out.push_back(c.get_str());
    return out;
}

Exponent parse_exponent(const std::vector<std::string>& coords, const ExponentBasis& basis)
{
    if (coords.size() != basis.size())
        fail(ErrorKind::Basis, "exponent has " + std::to_string(coords.size()) +
                                   " coordinates, basis has " + std::to_string(basis.size()));
    Exponent e;
    for (const auto& c : coords)
        e.coords.push_back(parse_rational(c));
    return e;
}

double Cutoff::to_double() const
{
    return is_infinite() ? std::numeric_limits<double>::infinity() : value().get_d();
}

Cutoff Cutoff::from_double(double v)
{
    if (!std::isfinite(v))
        return Cutoff::infinite();
    return Cutoff(Rational(v));
}

bool below(const Exponent& e, const Cutoff& c, const ExponentBasis& basis)
{
    if (c.is_infinite())
        return true;
    auto s = re_sign(e, c.value(), basis);
    return s && *s < 0;
}

} // namespace dulac
