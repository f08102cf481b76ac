#include <doctest.h>

#include <limits>

#include "bifree/errors.hpp"
#include "bifree/rational.hpp"
#include "bifree/scalar.hpp"

using bifree::Rational;
using bifree::Scalar;

TEST_CASE("rational reduces and prints")
{
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("+7") == Rational(7));
    CHECK_THROWS_AS(Rational::parse("1/0"), bifree::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/-2"), bifree::ParseError);
    CHECK_THROWS_AS(Rational::parse("x"), bifree::ParseError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), bifree::DomainError);
}

TEST_CASE("rational promotes past 64 bits and demotes back")
{
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    Rational a(big);
    Rational sq = a * a;
    CHECK(sq.str() == "85070591730234615847396907784232501249");
    CHECK(sq / a == a);
    CHECK((sq - sq).is_zero());
    Rational frac = Rational(1, big) * Rational(1, big - 1);
    CHECK(frac * Rational(big) * Rational(big - 1) == Rational(1));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(sq > a);
    CHECK(-sq < Rational(0));
}

TEST_CASE("harmonic sum stays exact")
{
    Rational h;
    for (int k = 1; k <= 40; ++k) h += Rational(1, k);
    CHECK(h.str() == "2078178381193813/485721041551200");
}

TEST_CASE("complex rational scalars")
{
    Scalar i(0, 1);
    CHECK((i * i) == Scalar(-1));
    CHECK(Scalar::parse("1/2+3/4i") == Scalar(Rational(1, 2), Rational(3, 4)));
    CHECK(Scalar::parse("1/2-3/4i").str() == "1/2-3/4i");
    CHECK(Scalar::parse("-i") == Scalar(0, -1));
    CHECK(Scalar::parse("2/3i").str() == "2/3i");
    CHECK(Scalar::parse("-5").str() == "-5");
    Scalar z = Scalar::parse("1+2i");
    CHECK((z / z) == Scalar(1));
    CHECK((z * z.conj()) == Scalar(5));
}
