#pragma once

// Formal solutions: linearized leading data along a prefix, the hypotheses
// on it, the coefficient recursion L(lambda + d/dt) v = b and the reduced
// equation obtained by splitting off a prefix.

#include "dulac/ode.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dulac {

/// Positive slope, possibly +inf.
struct Slope {
    bool infinite = false;
    Rational value;

    static Slope inf() { return {true, Rational(0)}; }
    static Slope finite(Rational v)
    {
        v.canonicalize();
        return {false, std::move(v)};
    }
    double to_double() const;
    std::string str() const; // "inf" or exact rational
    friend bool operator==(const Slope& a, const Slope& b)
    {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

struct LinearData {
    BasisPtr basis;
    unsigned n = 0;
    Exponent nu;
    std::vector<ExactScalar> A;           // n + 1 entries
    std::vector<std::optional<Exponent>> nu_j;
    std::vector<std::optional<TPoly>> B;
    unsigned ell = 0;
    TPoly L;                              // sum_{j <= ell} A_j zeta^j
    std::optional<Rational> tau;          // Re tau; absent when the slope is undetermined
    std::vector<std::string> warnings;

    /// Same nu, A and ell.
    bool same_leading(const LinearData& o) const;
};

/// G_j = dF/dy_j at the prefix; nu = least leading exponent. For G_j whose
/// leading exponent exceeds nu, A_j = 0 and (nu_j, B_j) is that leading
/// term. Throws HypothesisViolation (nonconstant x^nu coefficient),
/// AllDerivativesVanish.
LinearData extract_linearization(const ODESpec& f, const DulacSeries& prefix);

/// Recomputes tau from an explicit slope.
void apply_slope(LinearData& lin, const Slope& s);

struct RootInfo {
    double re = 0;
    double im = 0;
};

struct ConditionReport {
    Exponent lambda_m;
    std::vector<RootInfo> roots;
    bool cond_i = false;
    double margin_i = 0;   // Re lambda_m - max Re root (+inf without roots)
    bool cond_ii = false;
    double margin_ii = 0;  // Re lambda_m - (max Re nu_j + 2 Re tau)
    std::optional<bool> cond_iii;
    double margin_iii = 0;
    std::optional<std::size_t> minimal_m; // 1-based
    std::vector<std::string> notes;
};

/// Conditions at the last prefix exponent. Throws IndeterminateRoot when a
/// root of L lies within 1e-20 of Re lambda_m without being certain.
ConditionReport check_conditions(const LinearData& lin, const DulacSeries& prefix,
                                 const std::optional<Exponent>& next_exponent = std::nullopt);

/// Unique polynomial v with L(lambda + d/dt) v = b. Throws Resonance when
/// L(lambda) = 0.
TPoly solve_coefficient(const TPoly& l, const ExactScalar& lambda, const TPoly& b);

struct SolutionStep {
    Exponent lambda;
    TPoly c;
    TPoly b;              // right-hand side used
    double residual_val;  // val of the residual this step cancelled
};

struct SolutionState {
    DulacSeries solution;
    std::size_t prefix_terms = 0;
    LinearData lin;
    DulacSeries residual;
    std::vector<SolutionStep> history;
    bool restarted = false;
};

/// Extends prefix (taken as exact) until Re lambda reaches target. Throws
/// Resonance, NonProgressingResidual, LinearDataDrift.
SolutionState extend(const ODESpec& f, const DulacSeries& prefix, const Rational& target);

struct ReducedEquation {
    BasisPtr basis;
    unsigned n = 0;
    std::size_t m = 0;
    Exponent lambda_m;
    Exponent nu;
    Slope s;
    Exponent tau;
    TPoly L;
    std::vector<DulacSeries> Ltilde;                              // j = 0..n
    std::map<std::vector<unsigned long>, DulacSeries> N;          // |q| != 1
    ConditionReport conditions;
    std::vector<std::string> flags;

    /// L(lambda_m + delta) psi + Ltilde(lambda_m + delta) psi
    ///   + sum_q a_q x^{tau |q|} prod_j ((lambda_m + delta)^j psi)^{q_j}.
    DulacSeries evaluate(const DulacSeries& psi) const;
};

/// Splits the first m prefix terms off (1-based m). Condition failures are
/// flagged, not thrown.
ReducedEquation reduce(const ODESpec& f, const DulacSeries& prefix, std::size_t m, const Slope& s);

} // namespace dulac
