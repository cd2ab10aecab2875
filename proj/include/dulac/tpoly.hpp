#pragma once

// Dense polynomials in t = ln x over exact complex rationals. The same type
// is used for polynomials in the auxiliary variable zeta (L(zeta)).

#include "dulac/numeric.hpp"
#include "dulac/scalar.hpp"

#include <string>
#include <vector>

namespace dulac {

class TPoly {
public:
    TPoly() = default;
    TPoly(ExactScalar c);
    explicit TPoly(std::vector<ExactScalar> coeffs);

    /// t^k
    static TPoly monomial(std::size_t k, ExactScalar c = ExactScalar(1));

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const std::vector<ExactScalar>& coeffs() const noexcept { return c_; }
    /// Coefficient of t^k (zero past the degree).
    ExactScalar coeff(std::size_t k) const;

    TPoly derivative() const;
    ExactScalar eval(const ExactScalar& x) const;

    TPoly operator-() const;
    TPoly& operator+=(const TPoly& o);
    TPoly& operator-=(const TPoly& o);
    TPoly& operator*=(const ExactScalar& s);
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator*(TPoly a, const ExactScalar& s) { return a *= s; }
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }

    std::vector<std::string> to_strings() const;
    static TPoly parse(const std::vector<std::string>& coeffs);

private:
    void strip();

    std::vector<ExactScalar> c_;
};

/// ||p||_R = sum_j |a_j| R^j, R > 1. Throws Error{Domain} for R <= 1.
Real poly_norm(const TPoly& p, const Real& r);

/// (lambda + d/dt) p
TPoly shifted_derivative(const TPoly& p, const ExactScalar& lambda);

/// L(lambda + d/dt) v, with L given by its coefficients in zeta. Evaluated by
/// Horner's scheme on the operator.
TPoly apply_operator(const TPoly& l, const ExactScalar& lambda, const TPoly& v);

} // namespace dulac
