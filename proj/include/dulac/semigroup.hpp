#pragma once

// Finitely generated additive semigroups G = Z_+ r_1 + ... + Z_+ r_kappa of
// exponents, with Z-independent generators of positive real part.

#include "dulac/exponent.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dulac {

class DulacSeries;
class ODESpec;

using MultiIndex = std::vector<unsigned long>;

unsigned long total_degree(const MultiIndex& m);

class Generators;
using GensPtr = std::shared_ptr<const Generators>;

class Generators {
public:
    /// Throws Error{NonpositiveRealPart} when some Re r_j > 0 is not
    /// certain, Error{DependentGenerators} with an integer relation
    /// sum m_j r_j = 0 as witness when the coordinate matrix lacks rank kappa.
    static GensPtr validate(std::vector<Exponent> r, BasisPtr basis);

    const BasisPtr& basis() const noexcept { return basis_; }
    const std::vector<Exponent>& r() const noexcept { return r_; }
    std::size_t kappa() const noexcept { return r_.size(); }
    /// Basis coordinates of the generators as columns (dim x kappa).
    const std::vector<std::vector<Rational>>& matrix() const noexcept { return matrix_; }

    /// <m, r>
    Exponent exponent_of(const MultiIndex& m) const;

    /// min_j Re r_j (a rational lower bound for inexact generators).
    Rational beta() const;

    bool same_as(const Generators& o) const;

private:
    Generators() = default;

    BasisPtr basis_;
    std::vector<Exponent> r_;
    std::vector<std::vector<Rational>> matrix_;
};

/// The m in Z_+^kappa \ {0} with <m, r> = lambda, if any.
std::optional<MultiIndex> decompose(const Exponent& lambda, const Generators& gens);

/// Componentwise-minimal elements of {m != 0 : Re<m, r> > tau}.
/// Throws Error{Domain} when the search box exceeds max_points and
/// Error{UndecidableComparison} when Re<m, r> - tau cannot be signed.
std::vector<MultiIndex> minimal_elements(const Generators& gens, const Rational& tau,
                                         std::size_t max_points = 1000000);

struct KcalInfo {
    Rational K;                     // degree bound deg c_m <= K |m|
    std::vector<MultiIndex> minimal;
    unsigned long max_norm = 0;     // max |m^(i)|
    Rational Kcal;                  // 2 K max |m^(i)|
};

KcalInfo compute_kcal(const Rational& k_fit, const Generators& gens, const Rational& tau);

/// 1-based indices k > m whose gap lambda_k - lambda_m does not lie in G.
std::vector<std::size_t> gap_violations(const DulacSeries& solution, std::size_t m,
                                        const Generators& gens);

struct GeneratorSuggestion {
    std::vector<Exponent> r;
    std::vector<std::string> notes;
};

/// Heuristic only: walks the candidates 1, the prefix exponents, their
/// consecutive gaps and tau (when given) in that order, keeping each one
/// that neither decomposes over the kept ones nor breaks independence.
GeneratorSuggestion suggest_generators(const DulacSeries& prefix,
                                       const std::optional<Rational>& tau);

} // namespace dulac
