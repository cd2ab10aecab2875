#pragma once

// F(x, y_0, ..., y_n) with y_j standing for delta^j y, as a finite list of
// monomials coeff * x^p * y_0^{q_0} ... y_n^{q_n}. An analytic F is given
// by its Taylor polynomial up to a declared total degree D.

#include "dulac/dulac_series.hpp"

#include <optional>
#include <vector>

namespace dulac {

struct FTerm {
    ExactScalar coeff;
    unsigned long p = 0;
    std::vector<unsigned long> q; // length n + 1

    unsigned long y_degree() const;
    friend bool operator==(const FTerm& a, const FTerm& b) = default;
};

class ODESpec {
public:
    /// Validates: q of length n+1, no repeated (p, q), nonzero coefficients,
    /// no constant term, and p + |q| <= D when a degree is declared.
    /// Throws Error{Schema}.
    static ODESpec create(unsigned n, std::vector<FTerm> terms,
                          std::optional<long> degree = std::nullopt);

    unsigned n() const noexcept { return n_; }
    const std::vector<FTerm>& terms() const noexcept { return terms_; }
    const std::optional<long>& degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Largest |q| among the terms (0 for the zero function).
    unsigned long y_degree() const;

    friend bool operator==(const ODESpec& a, const ODESpec& b) = default;

private:
    friend ODESpec partial(const ODESpec&, unsigned);
    friend ODESpec taylor_coefficient(const ODESpec&, const std::vector<unsigned long>&);
    static ODESpec assemble(unsigned n, std::vector<FTerm> terms, std::optional<long> degree);

    unsigned n_ = 0;
    std::vector<FTerm> terms_;
    std::optional<long> degree_;
};

/// dF/dy_j; the declared degree drops by one.
ODESpec partial(const ODESpec& f, unsigned j);

/// Coefficient of u^q in F(x, y + u), i.e. (1/q!) d^{|q|}F/dy^q.
ODESpec taylor_coefficient(const ODESpec& f, const std::vector<unsigned long>& q);

/// F(x, phi, delta phi, ..., delta^n phi). Requires val(phi) > 0 (any value
/// for the zero series) and a basis in which integer powers of x embed.
/// Intermediate products are clipped at work_cutoff when given. With a
/// declared degree D the result is further truncated at
/// (D + 1) * min(1, val phi).
DulacSeries substitute(const ODESpec& f, const DulacSeries& phi,
                       const Cutoff& work_cutoff = Cutoff::infinite());

/// Monomial-by-monomial evaluation without grouping or power caching.
DulacSeries substitute_direct(const ODESpec& f, const DulacSeries& phi,
                              const Cutoff& work_cutoff = Cutoff::infinite());

} // namespace dulac
