#pragma once

// Complex exponents as exact rational coordinate vectors over a declared
// basis of complex numbers.
//
// A basis entry component is either an exact rational or a decimal string
// standing for a number known only through its digits (for example an
// irrational exponent). Real and imaginary parts of an exponent are then
// evaluated as outward-rounded intervals; ordering escalates precision until
// the enclosures separate.

#include "dulac/numeric.hpp"
#include "dulac/scalar.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dulac {

struct BasisComponent {
    bool exact = true;
    Rational value;      // exact value (decimal components: unused)
    std::string decimal; // decimal text when !exact

    Interval enclosure() const;
};

struct BasisEntry {
    std::string literal;
    BasisComponent re;
    BasisComponent im;

    bool exact() const { return re.exact && im.exact; }
};

class ExponentBasis {
public:
    /// Each literal is "p/q", "a+bi" (exact) or contains decimal components
    /// such as "1.41421356237309504880" or "0.5+2.2360679774997896964i".
    /// Throws Error{Basis} when empty, duplicated, or when the exact entries
    /// are linearly dependent over Q.
    static std::shared_ptr<const ExponentBasis> create(const std::vector<std::string>& literals,
                                                       unsigned precision = kDefaultPrecision,
                                                       unsigned max_precision = kMaxPrecision);

    /// Convenience: the basis {1}.
    static std::shared_ptr<const ExponentBasis> unit();

    std::size_t size() const noexcept { return entries_.size(); }
    const BasisEntry& entry(std::size_t k) const { return entries_.at(k); }
    unsigned precision() const noexcept { return precision_; }
    unsigned max_precision() const noexcept { return max_precision_; }

    std::vector<std::string> literals() const;

    bool same_as(const ExponentBasis& o) const;

private:
    ExponentBasis() = default;

    std::vector<BasisEntry> entries_;
    unsigned precision_ = kDefaultPrecision;
    unsigned max_precision_ = kMaxPrecision;
};

using BasisPtr = std::shared_ptr<const ExponentBasis>;

struct Exponent {
    std::vector<Rational> coords;

    Exponent() = default;
    explicit Exponent(std::vector<Rational> c) : coords(std::move(c))
    {
        for (auto& q : coords)
            q.canonicalize();
    }
    static Exponent zero(std::size_t dim) { return Exponent(std::vector<Rational>(dim, Rational(0))); }

    bool is_zero() const;
    Exponent& operator+=(const Exponent& o);
    Exponent& operator-=(const Exponent& o);
    friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
    friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }
    Exponent scaled(const Rational& q) const;

    friend bool operator==(const Exponent& a, const Exponent& b) { return a.coords == b.coords; }
};

/// Exact complex value when every nonzero coordinate sits on an exact entry.
std::optional<ExactScalar> exact_value(const Exponent& e, const ExponentBasis& basis);
/// As exact_value but throws Error{InexactExponent}.
ExactScalar value(const Exponent& e, const ExponentBasis& basis);

/// Coordinates of an exact complex number in the span of the exact entries.
/// Throws Error{Basis} when the number is not representable.
Exponent embed(const ExactScalar& v, const ExponentBasis& basis);

Interval re_enclosure(const Exponent& e, const ExponentBasis& basis);
Interval im_enclosure(const Exponent& e, const ExponentBasis& basis);

/// Re as a double (interval midpoint when inexact).
double re_double(const Exponent& e, const ExponentBasis& basis);
double im_double(const Exponent& e, const ExponentBasis& basis);

/// Re as a Real: exact value when available, otherwise the enclosure
/// midpoint at the basis precision.
Real re_real(const Exponent& e, const ExponentBasis& basis);

/// Exact Re when available, otherwise a rational lower bound of the
/// enclosure at the basis' base precision.
Rational re_lower_bound(const Exponent& e, const ExponentBasis& basis);

/// Sign of Re(e) - bound; nullopt when undecidable at max precision.
std::optional<int> re_sign(const Exponent& e, const Rational& bound, const ExponentBasis& basis);

/// Total order: by Re, ties by Im ascending, Equal iff coordinates equal.
/// Throws Error{UndecidableComparison} when enclosures still overlap at the
/// basis' max precision.
std::strong_ordering compare(const Exponent& a, const Exponent& b, const ExponentBasis& basis);

/// Coordinates as strings.
std::vector<std::string> to_strings(const Exponent& e);
Exponent parse_exponent(const std::vector<std::string>& coords, const ExponentBasis& basis);

/// A real bound that may be +inf. Used for series cutoffs.
class Cutoff {
public:
    Cutoff() = default; // +inf
    Cutoff(Rational q) : v_(std::move(q)) { v_->canonicalize(); }
    Cutoff(long q) : v_(Rational(q)) {}
    static Cutoff infinite() { return {}; }

    bool is_infinite() const noexcept { return !v_.has_value(); }
    const Rational& value() const { return *v_; }
    double to_double() const;

    friend Cutoff operator+(const Cutoff& c, const Rational& q)
    {
        return c.is_infinite() ? c : Cutoff(c.value() + q);
    }
    friend Cutoff operator-(const Cutoff& c, const Rational& q)
    {
        return c.is_infinite() ? c : Cutoff(c.value() - q);
    }
    friend bool operator==(const Cutoff& a, const Cutoff& b)
    {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() == b.is_infinite();
        return a.value() == b.value();
    }
    friend bool operator<(const Cutoff& a, const Cutoff& b)
    {
        if (a.is_infinite())
            return false;
        return b.is_infinite() || a.value() < b.value();
    }
    friend bool operator<=(const Cutoff& a, const Cutoff& b) { return !(b < a); }

    /// Doubles convert exactly; non-finite doubles map to +inf.
    static Cutoff from_double(double v);

private:
    std::optional<Rational> v_;
};

inline Cutoff min(const Cutoff& a, const Cutoff& b)
{
    return b < a ? b : a;
}

/// True when Re(e) < c is certain; exponents whose enclosure straddles the
/// bound at max precision are treated as not below.
bool below(const Exponent& e, const Cutoff& c, const ExponentBasis& basis);

} // namespace dulac
