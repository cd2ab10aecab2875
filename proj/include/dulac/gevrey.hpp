#pragma once

// Slope of the linearized operator, Gamma-normalized coefficient norms and
// certified growth envelopes.

#include "dulac/gamma.hpp"
#include "dulac/solver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dulac {

/// +inf if A_n != 0, else min over j > ell with nu_j present of
/// Re(nu_j - nu)/(j - ell). Throws SlopeUndetermined.
Slope slope(const LinearData& lin);

struct RhoEntry {
    std::size_t k = 0; // 1-based term index
    Exponent lambda;
    double re_lambda = 0;
    double im_lambda = 0;
    std::string re_text; // exact rational when available
    std::string im_text;
    long deg_c = 0;
    Real norm;     // ||c_k||_R
    Real gamma;    // |Gamma(lambda_k / s)|, 1 when s = +inf
    Real rho;      // norm / gamma
    Real envelope; // C A^k
};

/// Envelope rho_k <= C * A^{x_k}.
struct GrowthFit {
    Real C;
    Real A;
    std::size_t k_C = 0; // index achieving C (1-based, 0 when empty)
    std::size_t k_A = 0; // second index of the pair achieving A
    bool finite = true;
};

/// A = max over consecutive nonzero entries of (rho_b/rho_a)^{1/(b-a)}
/// clamped below at 1, C = max rho_k / A^k; C is then raised until the
/// envelope holds exactly at the working precision.
GrowthFit fit_growth(const std::vector<Real>& rho);

/// Same rule against real abscissae x_k (nondecreasing). Pairs with equal x
/// are skipped. With clamp = false A may fall below 1.
GrowthFit fit_growth_at(const std::vector<Real>& x, const std::vector<Real>& rho, bool clamp);

/// rho_k = ||c_k||_R / |Gamma(lambda_k / s)| over all solution terms; for an
/// infinite slope the Gamma factor is 1.
std::vector<RhoEntry> normalized_coeffs(const DulacSeries& solution, const Slope& s, const Real& r,
                                        double tol = kDefaultGammaTolerance);

enum class Verdict { GevreyBounded, ConvergentCandidate, Inconclusive };
const char* to_string(Verdict v) noexcept;

struct GevreyReport {
    Slope s;
    Real R;
    std::vector<RhoEntry> rows;
    GrowthFit fit_k;  // rho_k <= C A^k
    GrowthFit fit_re; // rho_k <= C A^{Re lambda_k}
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Real> radius; // 1/A for s = +inf
};

GevreyReport classify(const Slope& s, const DulacSeries& solution, const Real& r,
                      double tol = kDefaultGammaTolerance);

/// Columns k, re_lambda, im_lambda, deg_c, norm_R, gamma_abs, rho, envelope_Ck.
void write_csv(std::ostream& os, const GevreyReport& report);

} // namespace dulac
