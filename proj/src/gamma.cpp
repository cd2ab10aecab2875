#include "dulac/gamma.hpp"

#include "dulac/error.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace dulac {

namespace {

// B_0, B_2, B_4, ... exactly, extended on demand.
const std::vector<Rational>& even_bernoulli(std::size_t count)
{
    static std::mutex mu;
    static std::vector<Rational> all_b{Rational(1)}; // B_0..B_n, all indices
    static std::vector<Rational> even{Rational(1)};
    std::lock_guard lock(mu);
    while (even.size() < count) {
        // sum_{k=0}^{m} binom(m+1, k) B_k = 0
        std::size_t m = all_b.size();
        Rational acc = 0;
        mpz_class binom = 1;
        for (std::size_t k = 0; k < m; ++k) {
            acc += Rational(binom) * all_b[k];
            binom = binom * static_cast<unsigned long>(m + 1 - k) / static_cast<unsigned long>(k + 1);
        }
        Rational b = -acc / Rational(static_cast<long>(m + 1));
        b.canonicalize();
        all_b.push_back(b);
        if (m % 2 == 0)
            even.push_back(b);
    }
    return even;
}

unsigned bits_for(double tol)
{
    double need = tol > 0 ? -std::log2(tol) : 0.0;
    return std::max<unsigned>(working_precision(), static_cast<unsigned>(std::ceil(need)) + 32);
}

// Re log Gamma(w) by the Stirling series; w must have large modulus.
Real stirling_re(const Complex& w, unsigned bits)
{
    Real lw = log(w.abs());
    Real arg = w.arg();
    Real acc = (w.re - Real(0.5)) * lw - w.im * arg - w.re + log(Real(2L) * const_pi()) / Real(2L);

    Complex inv = Complex(Real(1L)) / w;
    Complex inv2 = inv * inv;
    Complex pw = inv; // w^{-(2k-1)}
    Real eps = pow(Real(2L), -static_cast<long>(bits) - 8);
    Real prev = Real::infinity();
    for (std::size_t k = 1;; ++k) {
        const auto& b = even_bernoulli(k + 1);
        Rational coef = b[k] / Rational(static_cast<long>(2 * k * (2 * k - 1)));
        Real c(coef);
        Real term = c * pw.re;
        Real mag = abs(c) * pw.abs();
        acc += term;
        if (mag < eps * max(Real(1L), abs(acc)))
            break;
        if (mag > prev || k > 4 * bits)
            fail(ErrorKind::Domain, "Stirling series did not converge; argument too small");
        prev = mag;
        pw = pw * inv2;
    }
    return acc;
}

} // namespace

Real log_gamma_abs(const Complex& z, double tol)
{
    if (!(z.re.sign() > 0) || !z.re.is_finite() || !z.im.is_finite())
        fail(ErrorKind::Domain, "|Gamma(z)| requires Re z > 0, got Re z = " + z.re.str(8));
    Real result;
    {
        // Extra bits absorb the cancellation in log Gamma for large |z|.
        unsigned bits = bits_for(tol);
        double mag = std::max(1.0, std::abs(z.re.to_double()) + std::abs(z.im.to_double()));
        bits += static_cast<unsigned>(std::ceil(std::log2(mag * std::log(mag + 2.0) + 2.0))) + 8;
        ScopedPrecision scope(bits);
        Complex w(Real(z.re), Real(z.im));
        // Shift until |w| is beyond the point where the asymptotic series
        // reaches 2^-bits before diverging (minimal term ~ exp(-2 pi |w|)).
        double needed = 0.12 * bits + 8.0;
        Real shift_logs;
        while (w.abs().to_double() < needed) {
            shift_logs += log(w.abs());
            w.re += Real(1L);
        }
        result = stirling_re(w, bits) - shift_logs;
    }
    return result;
}

Real gamma_abs(const Complex& z, double tol)
{
    ScopedPrecision scope(bits_for(tol));
    return exp(log_gamma_abs(z, tol));
}

Real gamma_abs(const ExactScalar& z, double tol)
{
    ScopedPrecision scope(bits_for(tol) + 16);
    return gamma_abs(Complex(z), tol);
}

} // namespace dulac
