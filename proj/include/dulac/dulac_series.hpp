#pragma once

// Truncated Dulac series  sum_k c_k(t) x^{lambda_k},  t = ln x.
//
// Terms are kept strictly increasing under compare() with nonzero
// coefficients. All terms with Re lambda below the cutoff are exact; nothing
// is known at or beyond it.

#include "dulac/exponent.hpp"
#include "dulac/tpoly.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace dulac {

struct Term {
    Exponent exp;
    TPoly coeff;

    friend bool operator==(const Term& a, const Term& b) = default;
};

class DulacSeries {
public:
    explicit DulacSeries(BasisPtr basis, Cutoff cutoff = Cutoff::infinite());

    /// Sorts, merges equal exponents, drops zero coefficients and terms not
    /// certainly below the cutoff.
    static DulacSeries from_terms(BasisPtr basis, std::vector<Term> terms,
                                  Cutoff cutoff = Cutoff::infinite());
    static DulacSeries monomial(BasisPtr basis, Exponent e, TPoly c,
                                Cutoff cutoff = Cutoff::infinite());

    const BasisPtr& basis() const noexcept { return basis_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    const Cutoff& cutoff() const noexcept { return cutoff_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Coefficient at exponent e (zero polynomial when absent).
    TPoly coefficient(const Exponent& e) const;

    /// Re of the least exponent; +inf for the zero series.
    double val() const;
    /// Rational lower bound of val (exact when the leading exponent is);
    /// nullopt for the zero series.
    std::optional<Rational> val_bound() const;

    DulacSeries truncate(const Cutoff& c) const;
    /// Same as truncate but never raises: min(c, cutoff).
    DulacSeries clip(const Cutoff& c) const;

    DulacSeries operator-() const;
    DulacSeries scaled(const ExactScalar& s) const;
    /// Multiplies by x^e.
    DulacSeries shifted(const Exponent& e) const;

    friend bool operator==(const DulacSeries& a, const DulacSeries& b);

private:
    void check_same_basis(const DulacSeries& o) const;
    friend DulacSeries add(const DulacSeries&, const DulacSeries&);
    friend DulacSeries sub(const DulacSeries&, const DulacSeries&);
    friend DulacSeries mul(const DulacSeries&, const DulacSeries&, const Cutoff&);

    BasisPtr basis_;
    std::vector<Term> terms_;
    Cutoff cutoff_;
};

DulacSeries add(const DulacSeries& f, const DulacSeries& g);
DulacSeries sub(const DulacSeries& f, const DulacSeries& g);
/// Product, additionally clipped at limit (used to bound intermediate work).
DulacSeries mul(const DulacSeries& f, const DulacSeries& g,
                const Cutoff& limit = Cutoff::infinite());
DulacSeries delta(const DulacSeries& f);

inline DulacSeries operator+(const DulacSeries& f, const DulacSeries& g) { return add(f, g); }
inline DulacSeries operator-(const DulacSeries& f, const DulacSeries& g) { return sub(f, g); }
inline DulacSeries operator*(const DulacSeries& f, const DulacSeries& g) { return mul(f, g); }

} // namespace dulac
