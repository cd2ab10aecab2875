#pragma once

// Weighted norms on multivariate series
//
//   ||g||_j = sum_m (|lambda_base + <m,r>| + Kcal |m|)^j / |Gamma(<m,r>/s)| * ||C_m||_R
//
// and finite-data checks of the estimates built on them. Stored series are
// truncations, so every norm here is a lower bound of the norm of the full
// series, and every check is a statement about the stored terms only.

#include "dulac/mseries.hpp"
#include "dulac/numeric.hpp"

#include <map>
#include <utility>

namespace dulac {

struct NormParams {
    Real R = Real(2L);
    Rational s = 1;
    Rational Kcal = 0;
    unsigned j = 0;
    Exponent lambda_base; // empty means zero

    /// Throws Error{Domain} unless R > 1, s > 0, Kcal >= 0.
    void validate() const;
};

/// |Gamma(<m, r> / s)| at the working precision.
Real gamma_weight(const Generators& gens, const MultiIndex& m, const Rational& s);
/// |lambda_base + <m, r>| + Kcal |m|
Real level_weight(const Generators& gens, const MultiIndex& m, const NormParams& p);

Real h_norm(const MSeries& g, const NormParams& p);

struct Lemma6Check {
    Real lhs;
    Real rhs;
    Real C_used;
    bool pass = false;
};

/// lhs = ||g1 g2||_0 for the untruncated product of the stored terms,
/// C_used = max over pairs (i, k) of |Gamma_i Gamma_k / Gamma_{i+k}|,
/// rhs = C_used ||g1||_0 ||g2||_0. Throws Error{PreconditionViolated} for j != 0.
Lemma6Check check_lemma6(const MSeries& g1, const MSeries& g2, const NormParams& p);

/// max(1, Gamma(beta/s)^2 / Gamma(2 beta/s)): bounds |B(z, w)| for
/// Re z, Re w >= beta/s, hence every C_used of check_lemma6.
Real lemma6_constant(const Rational& beta, const Rational& s);

struct Lemma5Check {
    Real lhs;
    Real bound;
    Real factor; // the maximized per-term factor
    bool pass = false;
};

/// lhs = ||a x^l (lambda_base + hat_delta)^j g||_0, bound = factor * ||g||_ell.
/// Throws Error{PreconditionViolated} unless deg a <= Kcal |l|,
/// Re<l, r> >= (j - ell) s and deg C_m <= Kcal |m| for every stored term.
Lemma5Check check_lemma5(const TPoly& a, const MultiIndex& l, unsigned j, unsigned ell,
                         const MSeries& g, const NormParams& p);

/// Keys (p, q): p a multi-index in x, q a multi-index over y_0..y_n.
using MajorantCoeffs = std::map<std::pair<MultiIndex, MultiIndex>, TPoly>;

/// sum ||a_{p,q}||_R / |Gamma(<p,r>/s)| rho^|p| C^|q| prod_j snorms_j^{q_j}
/// with C = lemma6_constant(beta, s); p = 0 carries weight 1.
Real majorant_bound(const Generators& gens, const MajorantCoeffs& coeffs, const Real& rho,
                    const std::vector<Real>& snorms, const NormParams& p);

struct RChoice {
    Rational beta;        // min Re r_j
    Rational theta_bound; // 1 / beta, bounds sup |m| / |lambda_base + <m,r>|
    Rational R_default;   // max(2, 2 Kcal theta)
    Rational Theta;       // theta / (1 - Kcal theta / R_default)
};

/// Requires Re lambda_base >= 0 (the bound on theta uses it).
RChoice choose_R(const Rational& Kcal, const Generators& gens, const Exponent& lambda_base);

struct SectorRadius {
    double log_radius;  // radius on which |ln x| <= |x|^-eps
    double gamma;       // |x^{r_i}| <= gamma |x|^{Re r_i} on the sector
    double radius;      // min(log_radius, (varrho / gamma)^{1/(beta - eps Kcal)})
};

/// For a sector |arg x| <= arg_bound and 0 < eps < beta / Kcal, a radius on
/// which the normalized series is dominated by sum ||c_m||_R varrho^|m|.
/// Throws Error{Domain} for eps out of range or nonpositive varrho.
SectorRadius sector_radius(const Generators& gens, const Rational& Kcal, double eps,
                           double arg_bound, double varrho);

} // namespace dulac
