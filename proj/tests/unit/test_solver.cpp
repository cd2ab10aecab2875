#include "doctest.h"

#include "dulac/error.hpp"
#include "dulac/gevrey.hpp"
#include "equations.hpp"
#include "random_series.hpp"

using namespace dulac;
using namespace dulac::testing;

namespace {

ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Parse;
}

DulacSeries empty()
{
    return DulacSeries(ExponentBasis::unit());
}

TPoly zeta_poly(std::vector<long> c)
{
    std::vector<ExactScalar> v(c.begin(), c.end());
    return TPoly(std::move(v));
}

Exponent ex(long v)
{
    return Exponent(std::vector<Rational>{v});
}

} // namespace

TEST_CASE("linearization examples")
{
    auto x_plus_x2 = add(single_term(1, {1}), single_term(2, {1}));
    auto e = extract_linearization(euler_equation(), x_plus_x2);
    CHECK(e.nu == ex(0));
    CHECK(e.A == std::vector<ExactScalar>{-1, 0});
    REQUIRE(e.nu_j[1]);
    CHECK(*e.nu_j[1] == ex(1));
    CHECK(*e.B[1] == zeta_poly({1}));
    CHECK(e.ell == 0);
    CHECK(e.L == zeta_poly({-1}));

    auto r = extract_linearization(resonant_equation(), single_term(1, {0, 1}));
    CHECK(r.nu == ex(0));
    CHECK(r.A == std::vector<ExactScalar>{-1, 1});
    CHECK(r.ell == 1);

    auto n = extract_linearization(nonlinear_equation(), single_term(1, {1}));
    CHECK(n.A == std::vector<ExactScalar>{-1, 0});
    CHECK(*n.nu_j[0] == ex(1));
    CHECK(*n.B[0] == zeta_poly({2}));
    CHECK(*n.nu_j[1] == ex(1));
    CHECK(n.ell == 0);
}

TEST_CASE("nonconstant leading coefficient violates the hypothesis")
{
    // F = y0^2 - x*y0 along t*x: dF/dy0 = 2 t x - x has x^1 coefficient 2t - 1
    auto f = ODESpec::create(0, {fterm(1, 0, {2}), fterm(-1, 1, {1})});
    CHECK(kind_of([&] { extract_linearization(f, single_term(1, {0, 1})); }) == ErrorKind::HypothesisViolation);
}

TEST_CASE("all derivatives vanish")
{
    // F = y0^2 at phi = 0
    auto f = ODESpec::create(0, {fterm(1, 0, {2})});
    CHECK(kind_of([&] { extract_linearization(f, empty()); }) == ErrorKind::AllDerivativesVanish);
}

TEST_CASE("condition examples")
{
    LinearData lin;
    lin.basis = ExponentBasis::unit();
    lin.n = 1;
    lin.nu = ex(0);
    lin.A = {-1, 0};
    lin.nu_j = {std::nullopt, ex(1)};
    lin.B = {std::nullopt, zeta_poly({1})};
    lin.ell = 0;
    lin.L = zeta_poly({-1});
    lin.tau = Rational(1);
    auto rep = check_conditions(lin, single_term(1, {1}));
    CHECK(rep.cond_i);
    CHECK_FALSE(rep.cond_ii); // 1 > 1 + 2 fails
    CHECK(rep.margin_ii == doctest::Approx(-2.0));

    LinearData res = lin;
    res.A = {-1, 1};
    res.ell = 1;
    res.L = zeta_poly({-1, 1});
    res.tau = Rational(0);
    auto r2 = check_conditions(res, single_term(1, {1}));
    CHECK_FALSE(r2.cond_i);
    auto r3 = check_conditions(res, single_term(2, {1}), ex(3));
    CHECK(r3.cond_i);
    REQUIRE(r3.cond_iii);
    CHECK(*r3.cond_iii);
}

TEST_CASE("condition (i) with quadratic and cubic L")
{
    LinearData lin;
    lin.basis = ExponentBasis::unit();
    lin.n = 3;
    lin.nu = ex(0);
    lin.nu_j.assign(4, std::nullopt);
    lin.B.assign(4, std::nullopt);
    lin.tau = Rational(0);
    // (z - 1)(z - 3) = z^2 - 4z + 3
    lin.A = {3, -4, 1, 0};
    lin.ell = 2;
    lin.L = zeta_poly({3, -4, 1});
    CHECK_FALSE(check_conditions(lin, single_term(2, {1})).cond_i);
    CHECK(check_conditions(lin, single_term(4, {1})).cond_i);
    // (z - 1)(z - 2)(z + 5) = z^3 + 2 z^2 - 13 z + 10
    lin.A = {10, -13, 2, 1};
    lin.ell = 3;
    lin.L = zeta_poly({10, -13, 2, 1});
    auto rep = check_conditions(lin, single_term(3, {1}));
    CHECK(rep.cond_i);
    CHECK(rep.margin_i == doctest::Approx(1.0));
    CHECK_FALSE(check_conditions(lin, single_term(2, {1})).cond_i);
}

TEST_CASE("indeterminate root band")
{
    auto b = ExponentBasis::create({"1", "1.00000000000000000000000001"});
    LinearData lin;
    lin.basis = b;
    lin.n = 2;
    lin.nu = Exponent::zero(2);
    lin.A = {3, -4, 1};
    lin.ell = 2;
    lin.L = zeta_poly({3, -4, 1}); // roots 1 and 3
    lin.nu_j.assign(3, std::nullopt);
    lin.B.assign(3, std::nullopt);
    lin.tau = Rational(0);
    auto prefix = DulacSeries::monomial(b, Exponent(std::vector<Rational>{0, 1}), zeta_poly({1}));
    CHECK(kind_of([&] { check_conditions(lin, prefix); }) == ErrorKind::IndeterminateRoot);
}

TEST_CASE("solve_coefficient examples")
{
    auto l = zeta_poly({-1, 1});
    CHECK(solve_coefficient(l, ExactScalar(2), zeta_poly({1})) == zeta_poly({1}));
    CHECK(solve_coefficient(l, ExactScalar(2), zeta_poly({0, 1})) == zeta_poly({-1, 1}));
    try {
        solve_coefficient(l, ExactScalar(1), zeta_poly({1}));
        FAIL("expected resonance");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resonance);
        CHECK(std::string(e.what()).find("Resonance at \xce\xbb=1") != std::string::npos);
    }
}

TEST_CASE("solve_coefficient round trip on random data")
{
    std::mt19937_64 rng(8);
    int checked = 0;
    while (checked < 200) {
        TPoly l = random_tpoly(rng, 4);
        ExactScalar lambda = random_scalar(rng);
        if (l.eval(lambda).is_zero())
            continue;
        TPoly b = random_tpoly(rng, 6);
        TPoly v = solve_coefficient(l, lambda, b);
        CHECK(apply_operator(l, lambda, v) == b);
        CHECK(v.degree() == b.degree());
        ++checked;
    }
}

TEST_CASE("Euler coefficients match (k-1)!")
{
    auto st = extend(euler_equation(), empty(), Rational(26));
    REQUIRE(st.solution.size() == 25);
    mpz_class fact = 1;
    for (std::size_t k = 1; k <= 25; ++k) {
        if (k > 1)
            fact *= static_cast<unsigned long>(k - 1);
        const auto& t = st.solution.terms()[k - 1];
        CHECK(t.exp == ex(static_cast<long>(k)));
        CHECK(t.coeff == TPoly(ExactScalar(Rational(fact))));
    }
    CHECK(st.solution.cutoff() == Cutoff(26));
    CHECK(st.lin.nu == ex(0));
    CHECK(st.lin.ell == 0);
    CHECK(slope(st.lin) == Slope::finite(1));
    for (std::size_t k = 1; k < st.history.size(); ++k)
        CHECK(st.history[k].residual_val > st.history[k - 1].residual_val);
}

TEST_CASE("extend is deterministic")
{
    auto a = extend(nonlinear_equation(), empty(), Rational(12));
    auto b = extend(nonlinear_equation(), empty(), Rational(12));
    CHECK(a.solution == b.solution);
    CHECK(a.residual == b.residual);
}

TEST_CASE("nonlinear coefficients match the convolution recursion")
{
    auto st = extend(nonlinear_equation(), empty(), Rational(21));
    REQUIRE(st.solution.size() == 20);
    std::vector<mpz_class> c(21);
    c[1] = 1;
    for (std::size_t k = 2; k <= 20; ++k) {
        c[k] = (k - 1) * c[k - 1];
        for (std::size_t i = 1; i < k; ++i)
            c[k] += c[i] * c[k - i];
    }
    CHECK(c[2] == 2);
    CHECK(c[3] == 8);
    CHECK(c[4] == 44);
    for (std::size_t k = 1; k <= 20; ++k)
        CHECK(st.solution.terms()[k - 1].coeff == TPoly(ExactScalar(Rational(c[k]))));
}

TEST_CASE("resonant equations")
{
    CHECK(kind_of([&] { extend(resonant_equation(), empty(), Rational(5)); }) == ErrorKind::Resonance);
    auto st = extend(resonant_equation(), single_term(1, {0, 1}), Rational(50));
    CHECK(st.residual.is_zero());
    CHECK(st.solution.size() == 1);
    std::vector<ExactScalar> half_t2{0, 0, ExactScalar(Rational(1, 2))};
    auto st2 = extend(double_resonant_equation(), single_term(1, half_t2), Rational(50));
    CHECK(st2.residual.is_zero());
    CHECK(st2.solution.size() == 1);
}

TEST_CASE("inconsistent prefix does not progress")
{
    // x^2 alone is not a germ of the Euler solution: residual starts at x.
    CHECK(kind_of([&] { extend(euler_equation(), single_term(2, {1}), Rational(6)); }) ==
          ErrorKind::NonProgressingResidual);
}

TEST_CASE("convergent case coefficients")
{
    auto st = extend(convergent_equation(), empty(), Rational(16));
    REQUIRE(st.solution.size() == 15);
    Rational c = 2;
    CHECK(st.solution.terms()[0].coeff == TPoly(ExactScalar(c)));
    for (std::size_t k = 2; k <= 15; ++k) {
        c = c / (Rational(static_cast<long>(k)) - Rational(1, 2));
        CHECK(st.solution.terms()[k - 1].coeff == TPoly(ExactScalar(c)));
    }
    CHECK(slope(st.lin).infinite);
}

TEST_CASE("reduce: Euler at m = 1")
{
    auto sol = extend(euler_equation(), empty(), Rational(8)).solution;
    auto red = reduce(euler_equation(), sol, 1, Slope::finite(1));
    CHECK(red.L == zeta_poly({-1}));
    CHECK(red.Ltilde[0].is_zero());
    CHECK(red.Ltilde[1] == single_term(1, {1}));
    REQUIRE(red.N.count({0, 0}) == 1);
    CHECK(red.N.at({0, 0}) == single_term(1, {1}));
    CHECK(red.N.size() == 1);
    CHECK_FALSE(red.conditions.cond_ii);
    CHECK_FALSE(red.flags.empty());
}

TEST_CASE("reduce: nonlinear m = 1 flags a negative exponent")
{
    auto sol = extend(nonlinear_equation(), empty(), Rational(8)).solution;
    auto red = reduce(nonlinear_equation(), sol, 1, Slope::finite(1));
    REQUIRE(red.N.count({2, 0}) == 1);
    const auto& a20 = red.N.at({2, 0});
    REQUIRE(a20.size() == 1);
    CHECK(a20.terms()[0].exp == ex(-1));
    bool flagged = false;
    for (const auto& f : red.flags)
        flagged = flagged || f.find("a_(2,0)") != std::string::npos;
    CHECK(flagged);
    // Condition (ii) first holds once Re lambda_m > 1 + 2 = 3.
    auto red4 = reduce(nonlinear_equation(), sol, 4, Slope::finite(1));
    CHECK(red4.conditions.cond_ii);
    REQUIRE(red4.conditions.minimal_m);
    CHECK(*red4.conditions.minimal_m == 4);
}

TEST_CASE("reduced equation is satisfied by the solution tail")
{
    for (const auto& f : {euler_equation(), nonlinear_equation()}) {
        auto sol = extend(f, empty(), Rational(12)).solution;
        for (std::size_t m : {1u, 3u, 5u}) {
            auto red = reduce(f, sol, m, Slope::finite(1));
            std::vector<Term> tail(sol.terms().begin() + static_cast<long>(m), sol.terms().end());
            auto psi = DulacSeries::from_terms(sol.basis(), tail, sol.cutoff())
                           .shifted(Exponent::zero(1) - red.lambda_m);
            auto r = red.evaluate(psi);
            CHECK(r.is_zero());
            CHECK(Cutoff(1) < r.cutoff());
        }
    }
}

TEST_CASE("linear F has only the q = 0 nonlinear entry")
{
    auto sol = extend(euler_equation(), empty(), Rational(6)).solution;
    auto red = reduce(euler_equation(), sol, 2, Slope::finite(1));
    CHECK(red.N.size() == 1);
    CHECK(red.N.begin()->first == std::vector<unsigned long>{0, 0});
}
