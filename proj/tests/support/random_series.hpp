#pragma once

// Random exact test data shared by the unit and acceptance tests.

#include "dulac/dulac_series.hpp"

#include <random>

namespace dulac::testing {

inline ExactScalar random_scalar(std::mt19937_64& rng, bool complex = true)
{
    std::uniform_int_distribution<long> num(-7, 7), den(1, 4);
    Rational re(num(rng), den(rng));
    Rational im = complex ? Rational(num(rng), den(rng)) : Rational(0);
    return {re, im};
}

inline TPoly random_tpoly(std::mt19937_64& rng, int max_deg, bool complex = true)
{
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::vector<ExactScalar> c;
    for (int k = deg(rng); k >= 0; --k)
        c.push_back(random_scalar(rng, complex));
    if (c.back().is_zero())
        c.back() = ExactScalar(1);
    return TPoly(std::move(c));
}

/// Positive-valuation exponent: over {1} a positive multiple of 1/2; over a
/// two-entry basis {1, w} with Re w > 0 nonnegative half-integer coordinates.
inline Exponent random_exponent(std::mt19937_64& rng, std::size_t dim)
{
    std::uniform_int_distribution<long> k(0, 8);
    if (dim == 1)
        return Exponent(std::vector<Rational>{Rational(k(rng) + 1, 2)});
    Rational a(k(rng), 2), b(k(rng) / 2, 1);
    if (sgn(a) == 0 && sgn(b) == 0)
        a = 1;
    return Exponent(std::vector<Rational>{a, b});
}

inline DulacSeries random_series(std::mt19937_64& rng, const BasisPtr& basis, int max_terms = 5,
                                 bool finite_cutoff = true)
{
    std::uniform_int_distribution<int> nterms(0, max_terms), cut(6, 16);
    std::vector<Term> terms;
    for (int k = nterms(rng); k > 0; --k)
        terms.push_back({random_exponent(rng, basis->size()), random_tpoly(rng, 2)});
    Cutoff c = finite_cutoff ? Cutoff(Rational(cut(rng), 2)) : Cutoff::infinite();
    return DulacSeries::from_terms(basis, std::move(terms), c);
}

} // namespace dulac::testing
