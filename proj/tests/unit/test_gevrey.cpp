#include "doctest.h"

#include "dulac/error.hpp"
#include "dulac/gevrey.hpp"
#include "equations.hpp"

#include <random>
#include <sstream>

using namespace dulac;
using namespace dulac::testing;

namespace {

LinearData synthetic(unsigned n, unsigned ell, std::vector<ExactScalar> a, std::vector<std::optional<long>> nus)
{
    LinearData lin;
    lin.basis = ExponentBasis::unit();
    lin.n = n;
    lin.ell = ell;
    lin.nu = Exponent::zero(1);
    lin.A = std::move(a);
    for (auto v : nus) {
        if (v)
            lin.nu_j.push_back(Exponent(std::vector<Rational>{*v}));
        else
            lin.nu_j.push_back(std::nullopt);
    }
    lin.B.assign(n + 1, std::nullopt);
    return lin;
}

std::vector<Real> reals(std::vector<double> v)
{
    std::vector<Real> out;
    for (double x : v)
        out.emplace_back(x);
    return out;
}

DulacSeries empty()
{
    return DulacSeries(ExponentBasis::unit());
}

} // namespace

TEST_CASE("slope examples")
{
    CHECK(slope(synthetic(1, 1, {-1, 1}, {std::nullopt, std::nullopt})).infinite);
    CHECK(slope(synthetic(1, 0, {-1, 0}, {std::nullopt, 1})) == Slope::finite(1));
    CHECK(slope(synthetic(2, 0, {-1, 0, 0}, {std::nullopt, 3, 4})) == Slope::finite(2));
    try {
        slope(synthetic(2, 0, {-1, 0, 0}, {std::nullopt, std::nullopt, std::nullopt}));
        FAIL("expected SlopeUndetermined");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SlopeUndetermined);
    }
}

TEST_CASE("slope scales with the exponents")
{
    for (long rho : {2L, 3L, 7L}) {
        auto base = synthetic(3, 0, {-1, 0, 0, 0}, {std::nullopt, 5, 4, 9});
        auto scaled = synthetic(3, 0, {-1, 0, 0, 0}, {std::nullopt, 5 * rho, 4 * rho, 9 * rho});
        CHECK(slope(scaled).value == slope(base).value * rho);
    }
}

TEST_CASE("fit_growth examples")
{
    auto f1 = fit_growth(reals({1, 1, 1, 1}));
    CHECK(f1.A == Real(1L));
    CHECK(abs(f1.C - Real(1L)) < Real(1e-30));
    auto f2 = fit_growth(reals({1, 2, 4, 8}));
    CHECK(abs(f2.A - Real(2L)) < Real(1e-30));
    CHECK(abs(f2.C - Real(0.5)) < Real(1e-30));
    auto f3 = fit_growth(reals({5}));
    CHECK(f3.A == Real(1L));
    CHECK(abs(f3.C - Real(5L)) < Real(1e-30));
}

TEST_CASE("fit_growth envelope holds on irregular data")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Real> rho;
        for (int k = 0; k < 12; ++k)
            rho.emplace_back(k % 5 == 3 ? 0.0 : u(rng));
        auto fit = fit_growth(rho);
        REQUIRE(fit.finite);
        for (std::size_t k = 0; k < rho.size(); ++k)
            CHECK(rho[k] <= fit.C * pow(fit.A, static_cast<long>(k + 1)));
    }
}

TEST_CASE("normalized coefficients")
{
    auto sol = extend(euler_equation(), empty(), Rational(26)).solution;
    auto rows = normalized_coeffs(sol, Slope::finite(1), Real(2L));
    REQUIRE(rows.size() == 25);
    for (const auto& r : rows)
        CHECK(abs(r.rho - Real(1L)) <= Real(1e-9));

    auto single = single_term(1, {0, 1});
    auto one = normalized_coeffs(single, Slope::finite(1), Real(2L));
    REQUIRE(one.size() == 1);
    CHECK(abs(one[0].rho - Real(2L)) < Real(1e-30));
    CHECK(normalized_coeffs(empty(), Slope::finite(1), Real(2L)).empty());
}

TEST_CASE("classify")
{
    auto euler = extend(euler_equation(), empty(), Rational(26));
    auto rep = classify(slope(euler.lin), euler.solution, Real(2L));
    CHECK(rep.verdict == Verdict::GevreyBounded);
    CHECK(rep.fit_k.A <= Real(1.0 + 1e-9));
    CHECK(abs(rep.fit_k.C - Real(1L)) <= Real(1e-9));

    auto conv = extend(convergent_equation(), empty(), Rational(20));
    auto rc = classify(slope(conv.lin), conv.solution, Real(2L));
    CHECK(rc.verdict == Verdict::ConvergentCandidate);
    CHECK(rc.fit_re.A <= Real(1L));
    REQUIRE(rc.radius);

    auto term = extend(resonant_equation(), single_term(1, {0, 1}), Rational(10));
    auto rt = classify(slope(term.lin), term.solution, Real(2L));
    CHECK(rt.verdict == Verdict::ConvergentCandidate);

    auto few = extend(euler_equation(), empty(), Rational(3));
    CHECK(classify(Slope::finite(1), few.solution, Real(2L)).verdict == Verdict::Inconclusive);
}

TEST_CASE("CSV layout")
{
    auto euler = extend(euler_equation(), empty(), Rational(4));
    auto rep = classify(Slope::finite(1), euler.solution, Real(2L));
    std::ostringstream os;
    write_csv(os, rep);
    std::string text = os.str();
    CHECK(text.rfind("k,re_lambda,im_lambda,deg_c,norm_R,gamma_abs,rho,envelope_Ck\n", 0) == 0);
    CHECK(text.find("\n1,1,0,0,") != std::string::npos);
    CHECK(text.back() == '\n');
}
