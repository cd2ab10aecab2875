#include "doctest.h"

#include "dulac/error.hpp"
#include "dulac/ode.hpp"
#include "random_series.hpp"

using namespace dulac;

namespace {

FTerm term(long c, unsigned long p, std::vector<unsigned long> q)
{
    return {ExactScalar(c), p, std::move(q)};
}

DulacSeries mono(long e, TPoly c)
{
    return DulacSeries::monomial(ExponentBasis::unit(), Exponent(std::vector<Rational>{e}), std::move(c));
}

TPoly poly(std::vector<long> c)
{
    std::vector<ExactScalar> v(c.begin(), c.end());
    return TPoly(std::move(v));
}

// x*y1 - y0 + x
ODESpec euler()
{
    return ODESpec::create(1, {term(1, 1, {0, 1}), term(-1, 0, {1, 0}), term(1, 1, {0, 0})});
}

} // namespace

TEST_CASE("substitute examples")
{
    auto x = mono(1, poly({1}));
    auto f1 = ODESpec::create(1, {term(1, 0, {0, 1}), term(-1, 0, {1, 0})});
    CHECK(substitute(f1, x).is_zero());

    CHECK(substitute(euler(), x) == mono(2, poly({1})));

    auto f3 = ODESpec::create(1, {term(1, 0, {0, 1}), term(-1, 0, {1, 0}), term(-1, 1, {0, 0})});
    CHECK(substitute(f3, mono(1, poly({0, 1}))).is_zero());
}

TEST_CASE("partial examples")
{
    auto d0 = partial(euler(), 0);
    REQUIRE(d0.terms().size() == 1);
    CHECK(d0.terms()[0] == term(-1, 0, {0, 0}));
    auto d1 = partial(euler(), 1);
    REQUIRE(d1.terms().size() == 1);
    CHECK(d1.terms()[0] == term(1, 1, {0, 0}));
    auto sq = ODESpec::create(0, {term(1, 0, {2})});
    auto dsq = partial(sq, 0);
    REQUIRE(dsq.terms().size() == 1);
    CHECK(dsq.terms()[0] == term(2, 0, {1}));
}

TEST_CASE("ODESpec validation")
{
    CHECK_THROWS_AS(ODESpec::create(1, {term(1, 0, {0, 0})}), Error);
    CHECK_THROWS_AS(ODESpec::create(1, {term(1, 1, {0})}), Error);
    CHECK_THROWS_AS(ODESpec::create(1, {term(1, 1, {0, 1}), term(2, 1, {0, 1})}), Error);
    CHECK_THROWS_AS(ODESpec::create(1, {term(0, 1, {0, 1})}), Error);
    CHECK_THROWS_AS(ODESpec::create(0, {term(1, 0, {3})}, 2), Error);
}

TEST_CASE("taylor coefficients agree with repeated partials")
{
    // x*y0^3*y1^2 - 2 y0^2 y1 + y1^4
    auto f = ODESpec::create(1, {term(1, 1, {3, 2}), term(-2, 0, {2, 1}), term(1, 0, {0, 4})});
    for (unsigned long a = 0; a <= 3; ++a) {
        for (unsigned long b = 0; b <= 4; ++b) {
            ODESpec d = f;
            mpz_class fact = 1;
            for (unsigned long k = 0; k < a; ++k) {
                d = partial(d, 0);
                fact *= k + 1;
            }
            for (unsigned long k = 0; k < b; ++k) {
                d = partial(d, 1);
                fact *= k + 1;
            }
            std::vector<FTerm> scaled;
            for (auto t : d.terms()) {
                t.coeff /= ExactScalar(Rational(fact));
                scaled.push_back(t);
            }
            CHECK(taylor_coefficient(f, {a, b}).terms() == scaled);
        }
    }
}

TEST_CASE("grouped and direct substitution agree")
{
    std::mt19937_64 rng(99);
    auto f = ODESpec::create(2, {term(1, 1, {0, 1, 0}), term(-3, 0, {2, 0, 1}), term(1, 2, {1, 1, 0}),
                                 term(5, 0, {0, 0, 3}), term(1, 3, {0, 0, 0}), term(-1, 0, {1, 0, 0})});
    for (const auto& basis : {ExponentBasis::unit(), ExponentBasis::create({"1", "1+i"})}) {
        for (int k = 0; k < 30; ++k) {
            auto phi = dulac::testing::random_series(rng, basis, 4);
            auto a = substitute(f, phi), b = substitute_direct(f, phi);
            CHECK(a == b);
            if (!a.is_zero()) {
                Rational lower = 0;
                bool first = true;
                for (const auto& t : f.terms()) {
                    Rational v = Rational(static_cast<long>(t.p)) +
                                 Rational(static_cast<long>(t.y_degree())) * phi.val_bound().value_or(0);
                    if (first || v < lower)
                        lower = v;
                    first = false;
                }
                CHECK(*a.val_bound() >= lower);
            }
        }
    }
}

TEST_CASE("declared degree truncates the substitution")
{
    auto f = ODESpec::create(0, {term(1, 0, {1}), term(1, 0, {2})}, 2);
    auto phi = mono(1, poly({1}));
    auto r = substitute(f, phi);
    CHECK(r.cutoff() == Cutoff(3));
    CHECK(r == add(mono(1, poly({1})), mono(2, poly({1}))).clip(Cutoff(3)));
    auto half = DulacSeries::monomial(ExponentBasis::unit(), Exponent(std::vector<Rational>{Rational(1, 2)}),
                                      poly({1}));
    CHECK(substitute(f, half).cutoff() == Cutoff(Rational(3, 2)));
}

TEST_CASE("nonpositive valuation is rejected")
{
    auto phi = DulacSeries::monomial(ExponentBasis::unit(), Exponent::zero(1), poly({1}));
    try {
        (void)substitute(euler(), phi);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonpositiveValuation);
    }
}
