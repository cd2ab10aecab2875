#include "doctest.h"

#include "dulac/error.hpp"
#include "random_series.hpp"

using namespace dulac;
using dulac::testing::random_series;

namespace {

BasisPtr unit()
{
    return ExponentBasis::unit();
}

Exponent ex(Rational a)
{
    return Exponent(std::vector<Rational>{std::move(a)});
}

DulacSeries mono(Rational e, TPoly c, Cutoff cut = Cutoff::infinite())
{
    return DulacSeries::monomial(unit(), ex(std::move(e)), std::move(c), cut);
}

TPoly t_poly(std::vector<long> c)
{
    std::vector<ExactScalar> v;
    for (long x : c)
        v.emplace_back(x);
    return TPoly(std::move(v));
}

// Both sides clipped to the smaller of their cutoffs.
bool agree(const DulacSeries& a, const DulacSeries& b)
{
    Cutoff c = min(a.cutoff(), b.cutoff());
    return a.clip(c) == b.clip(c);
}

} // namespace

TEST_CASE("add examples")
{
    auto x = mono(1, TPoly(ExactScalar(1)));
    CHECK(add(x, -x).is_zero());
    auto tx = mono(1, t_poly({0, 1}));
    CHECK(add(tx, x) == mono(1, t_poly({1, 1})));

    auto b = ExponentBasis::create({"1", "i"});
    auto f = DulacSeries::monomial(b, Exponent(std::vector<Rational>{1, 1}), TPoly(ExactScalar(1)), Cutoff(5));
    auto g = DulacSeries::monomial(b, Exponent(std::vector<Rational>{2, 0}), TPoly(ExactScalar(1)), Cutoff(3));
    auto s = add(f, g);
    CHECK(s.size() == 2);
    CHECK(s.cutoff() == Cutoff(3));
}

TEST_CASE("mul examples")
{
    auto h = mono(Rational(1, 2), TPoly(ExactScalar(1)));
    CHECK(mul(h, h) == mono(1, TPoly(ExactScalar(1))));
    auto tx = mono(1, t_poly({0, 1}));
    CHECK(mul(tx, tx) == mono(2, t_poly({0, 0, 1})));
    auto a = add(mono(1, t_poly({1})), mono(2, t_poly({1})));
    auto b = add(mono(1, t_poly({1})), mono(2, t_poly({-1})));
    auto expect = add(mono(2, t_poly({1})), mono(4, t_poly({-1})));
    CHECK(mul(a, b) == expect);
}

TEST_CASE("mul cutoff rule")
{
    auto f = mono(1, t_poly({1}), Cutoff(4));
    auto g = mono(2, t_poly({1}), Cutoff(3));
    CHECK(mul(f, g).cutoff() == Cutoff(min(Cutoff(4 + 2), Cutoff(3 + 1))));
    DulacSeries zero(unit(), Cutoff(5));
    CHECK(mul(zero, g).cutoff() == Cutoff(3));
}

TEST_CASE("delta examples")
{
    auto x = mono(1, t_poly({1}));
    CHECK(delta(x) == x);
    CHECK(delta(mono(1, t_poly({0, 1}))) == mono(1, t_poly({1, 1})));
    std::vector<ExactScalar> half_t2{ExactScalar(0), ExactScalar(0), ExactScalar(Rational(1, 2))};
    std::vector<ExactScalar> expect{ExactScalar(0), ExactScalar(1), ExactScalar(Rational(1, 2))};
    CHECK(delta(mono(1, TPoly(half_t2))) == mono(1, TPoly(expect)));
}

TEST_CASE("val examples")
{
    CHECK(add(mono(2, t_poly({1})), mono(3, t_poly({1}))).val() == 2.0);
    CHECK(DulacSeries(unit()).val() == std::numeric_limits<double>::infinity());
    auto b = ExponentBasis::create({"1", "i"});
    auto f = add(DulacSeries::monomial(b, Exponent(std::vector<Rational>{1, 1}), t_poly({1})),
                 DulacSeries::monomial(b, Exponent(std::vector<Rational>{3, 0}), t_poly({1})));
    CHECK(f.val() == 1.0);
}

TEST_CASE("truncate examples")
{
    auto f = add(mono(1, t_poly({1})), mono(2, t_poly({1})));
    CHECK(f.truncate(Cutoff(Rational(3, 2))) == mono(1, t_poly({1}), Cutoff(Rational(3, 2))));
    auto x = mono(1, t_poly({1}), Cutoff(4));
    auto z = x.truncate(Cutoff(Rational(1, 2)));
    CHECK(z.is_zero());
    CHECK(z.cutoff() == Cutoff(Rational(1, 2)));
    CHECK(x.truncate(Cutoff(4)) == x);
    try {
        (void)x.truncate(Cutoff(5));
        FAIL("expected CutoffIncrease");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CutoffIncrease);
    }
}

TEST_CASE("boundary terms are dropped")
{
    auto f = mono(2, t_poly({1}), Cutoff(2));
    CHECK(f.is_zero());
}

TEST_CASE("ring and derivation laws on random series")
{
    std::mt19937_64 rng(2024);
    for (const auto& basis : {ExponentBasis::unit(), ExponentBasis::create({"1", "1+i"})}) {
        for (int trial = 0; trial < 60; ++trial) {
            auto f = random_series(rng, basis), g = random_series(rng, basis), h = random_series(rng, basis);
            CHECK(add(add(f, g), h) == add(f, add(g, h)));
            CHECK(add(f, g) == add(g, f));
            CHECK(mul(f, g) == mul(g, f));
            auto l = mul(mul(f, g), h), r = mul(f, mul(g, h));
            CHECK(agree(l, r));
            auto dl = mul(f, add(g, h)), dr = add(mul(f, g), mul(f, h));
            CHECK(agree(dl, dr));
            auto lhs = delta(mul(f, g));
            auto rhs = add(mul(delta(f), g), mul(f, delta(g)));
            CHECK(agree(lhs, rhs));
            if (!f.is_zero() && !g.is_zero()) {
                auto p = mul(f, g);
                if (!p.is_zero())
                    CHECK(*p.val_bound() == *f.val_bound() + *g.val_bound());
            }
            auto fg = mul(f, g);
            for (const auto& t : fg.terms())
                CHECK(below(t.exp, fg.cutoff(), *basis));
        }
    }
}

TEST_CASE("basis mismatch is rejected")
{
    auto f = mono(1, t_poly({1}));
    auto g = DulacSeries::monomial(ExponentBasis::create({"1", "i"}), Exponent(std::vector<Rational>{1, 0}), t_poly({1}));
    CHECK_THROWS_AS(add(f, g), Error);
}
