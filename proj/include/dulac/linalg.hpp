#pragma once

// Dense exact linear algebra over Q.

#include "dulac/scalar.hpp"

#include <optional>
#include <vector>

namespace dulac::linalg {

using Matrix = std::vector<std::vector<Rational>>; // row-major

std::size_t rank(Matrix m);

/// Unique solution x of A x = b, nullopt if inconsistent. Requires A to have
/// full column rank (checked: throws std::invalid_argument otherwise).
std::optional<std::vector<Rational>> solve_unique(const Matrix& a, const std::vector<Rational>& b);

/// A nonzero vector of the right null space, nullopt when trivial.
std::optional<std::vector<Rational>> null_vector(const Matrix& a);

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
std::vector<mpz_class> primitive_integer(const std::vector<Rational>& v);

} // namespace dulac::linalg
