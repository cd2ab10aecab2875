#pragma once

// |Gamma(z)| for Re z > 0.
//
// log Gamma is evaluated by the Stirling series after shifting the argument
// upward with Gamma(z) = Gamma(z+N) / (z (z+1) ... (z+N-1)); the shift and
// the number of Bernoulli terms are chosen from the working precision, so
// the result meets any requested relative tolerance.

#include "dulac/numeric.hpp"
#include "dulac/scalar.hpp"

namespace dulac {

inline constexpr double kDefaultGammaTolerance = 1e-30;

/// log |Gamma(z)|. Throws Error{Domain} unless Re z > 0.
Real log_gamma_abs(const Complex& z, double tol = kDefaultGammaTolerance);

/// |Gamma(z)| with relative error at most tol.
Real gamma_abs(const Complex& z, double tol = kDefaultGammaTolerance);
/// Exact argument, converted at the precision the tolerance needs.
Real gamma_abs(const ExactScalar& z, double tol = kDefaultGammaTolerance);

} // namespace dulac
