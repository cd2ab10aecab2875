#pragma once

// Truncated multivariate series  sum_m C_m(t) x_1^{m_1} ... x_kappa^{m_kappa}
// over a semigroup's generators, the image of Dulac series under iota.
//
// The cutoff bounds Re<m, r>, and the arithmetic follows the same truncation
// rules as DulacSeries, so iota commutes with +, * and delta exactly.

#include "dulac/dulac_series.hpp"
#include "dulac/semigroup.hpp"
#include "dulac/tpoly.hpp"

#include <map>

namespace dulac {

class MSeries {
public:
    using TermMap = std::map<MultiIndex, TPoly>;

    explicit MSeries(GensPtr gens, Cutoff cutoff = Cutoff::infinite());

    /// Drops zero coefficients and indices with Re<m, r> not below the
    /// cutoff. Throws Error{Schema} for the zero index or a wrong length.
    static MSeries from_terms(GensPtr gens, TermMap terms, Cutoff cutoff = Cutoff::infinite());

    const GensPtr& gens() const noexcept { return gens_; }
    const TermMap& terms() const noexcept { return terms_; }
    const Cutoff& cutoff() const noexcept { return cutoff_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    TPoly coefficient(const MultiIndex& m) const;

    /// Lower bound of min Re<m, r> over the terms, as DulacSeries::val_bound.
    std::optional<Rational> val_bound() const;

    MSeries operator-() const;
    MSeries scaled(const ExactScalar& s) const;
    /// Multiplies by a(t) x^l.
    MSeries times_monomial(const TPoly& a, const MultiIndex& l) const;

    friend bool operator==(const MSeries& a, const MSeries& b);

private:
    void check_same(const MSeries& o) const;
    friend MSeries add(const MSeries&, const MSeries&);
    friend MSeries sub(const MSeries&, const MSeries&);
    friend MSeries mul(const MSeries&, const MSeries&, const Cutoff&);

    GensPtr gens_;
    TermMap terms_;
    Cutoff cutoff_;
};

MSeries add(const MSeries& f, const MSeries& g);
MSeries sub(const MSeries& f, const MSeries& g);
/// Multi-index convolution with the DulacSeries cutoff rule.
MSeries mul(const MSeries& f, const MSeries& g, const Cutoff& limit = Cutoff::infinite());

inline MSeries operator+(const MSeries& f, const MSeries& g) { return add(f, g); }
inline MSeries operator-(const MSeries& f, const MSeries& g) { return sub(f, g); }
inline MSeries operator*(const MSeries& f, const MSeries& g) { return mul(f, g); }

/// Throws Error{ExponentOutsideSemigroup} naming the first exponent of f
/// that does not decompose over gens.
MSeries iota(const DulacSeries& f, GensPtr gens);
DulacSeries iota_inv(const MSeries& g);

/// The tail sum_{k>m} c_k x^{lambda_k - lambda_m} of a solution (m is
/// 1-based), with its cutoff shifted by -Re lambda_m, mapped through iota.
MSeries tail_image(const DulacSeries& solution, std::size_t m, GensPtr gens);

/// C_m -> (<m, r> + d/dt) C_m
MSeries hat_delta(const MSeries& g);
/// C_m -> (lambda + <m, r> + d/dt) C_m
MSeries hat_delta_shifted(const MSeries& g, const Exponent& lambda);

/// max deg C_m / |m| (0 for constant coefficients or the zero series).
Rational fit_degree_K(const MSeries& g);

} // namespace dulac
