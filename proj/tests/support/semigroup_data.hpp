#pragma once

// Random data living in a semigroup, for the iota and norm checks.

#include "dulac/mseries.hpp"
#include "random_series.hpp"

namespace dulac::testing {

inline MultiIndex random_index(std::mt19937_64& rng, std::size_t kappa, unsigned long max_entry = 3)
{
    std::uniform_int_distribution<unsigned long> d(0, max_entry);
    MultiIndex m(kappa);
    do {
        for (auto& x : m)
            x = d(rng);
    } while (total_degree(m) == 0);
    return m;
}

/// Terms at <m, r> for random m; cutoff k/2 with k in 6..16 or +inf.
inline DulacSeries random_semigroup_series(std::mt19937_64& rng, const Generators& gens,
                                           int max_terms = 5, bool finite_cutoff = true)
{
    std::uniform_int_distribution<int> nterms(0, max_terms), cut(6, 16);
    std::vector<Term> terms;
    for (int k = nterms(rng); k > 0; --k)
        terms.push_back({gens.exponent_of(random_index(rng, gens.kappa())), random_tpoly(rng, 2)});
    Cutoff c = finite_cutoff ? Cutoff(Rational(cut(rng), 2)) : Cutoff::infinite();
    return DulacSeries::from_terms(gens.basis(), std::move(terms), c);
}

/// Untruncated series with deg C_m <= kcal |m| (kcal = 0: constants).
inline MSeries random_mseries(std::mt19937_64& rng, const GensPtr& gens, int max_terms, unsigned kcal)
{
    std::uniform_int_distribution<int> nterms(1, max_terms);
    MSeries::TermMap terms;
    for (int k = nterms(rng); k > 0; --k) {
        MultiIndex m = random_index(rng, gens->kappa());
        terms[m] = random_tpoly(rng, static_cast<int>(kcal * total_degree(m)));
    }
    return MSeries::from_terms(gens, std::move(terms));
}

} // namespace dulac::testing
