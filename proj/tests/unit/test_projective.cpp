#include <doctest.h>

#include <cmath>

#include "arithdyn/errors.hpp"
#include "arithdyn/projective.hpp"

using namespace arithdyn;

TEST_CASE("normalization") {
    CHECK(normalize(Rational(4), Rational(6)).to_string() == "[2:3]");
    CHECK(normalize(Rational(0), Rational(-5)).to_string() == "[0:1]");
    CHECK(normalize(Rational(7, 3), Rational(1)).to_string() == "[7:3]");
    CHECK(normalize(Rational(-3), Rational(0)).to_string() == "[1:0]");
    CHECK(ProjPoint(-4, -6) == ProjPoint(2, 3));
    CHECK_THROWS_WITH_AS(normalize(Rational(0), Rational(0)), "not a projective point", PreconditionError);
    CHECK_THROWS_AS(ProjPoint(0, 0), PreconditionError);
}

TEST_CASE("point parsing") {
    CHECK(ProjPoint::parse("[2:-4]") == ProjPoint(-1, 2));
    CHECK(ProjPoint::parse("-1/2") == ProjPoint(-1, 2));
    CHECK(ProjPoint::parse("inf").is_infinity());
    CHECK(ProjPoint::parse("[1/2:1/3]") == ProjPoint(3, 2));
    CHECK_THROWS_AS(ProjPoint::parse("[1:2"), ParseError);
    CHECK_THROWS_AS(ProjPoint::parse("[0:0]"), PreconditionError);
    CHECK_THROWS_AS(ProjPoint::parse("abc"), ParseError);
}

TEST_CASE("ordering and accessors") {
    CHECK(ProjPoint(-1, 1) < ProjPoint(0, 1));
    CHECK(ProjPoint(5, 1) < ProjPoint::infinity());
    CHECK(ProjPoint(7, 3).affine_value() == Rational(7, 3));
    CHECK_FALSE(ProjPoint::infinity().affine_value().has_value());
    CHECK(ProjPoint(-7, 3).height_bound() == 7);
}

TEST_CASE("cross term") {
    CHECK(cross_term(ProjPoint(8, 1), ProjPoint(-8, 1)) == 16);
    CHECK(cross_term(ProjPoint(2, 1), ProjPoint(2, 1)) == 0);
    CHECK(cross_term(ProjPoint(2, 1), ProjPoint::infinity()) == -1);
}

TEST_CASE("chordal distance") {
    const ProjPoint P(3, 7);
    CHECK(chordal_distance(P, P, BigInt(5)).approx() == 0.0);
    CHECK(chordal_distance(P, P, Archimedean{}).approx() == 0.0);
    const auto d3 = chordal_distance(ProjPoint(0, 1), ProjPoint(1, 1), BigInt(3));
    CHECK(std::get<Rational>(d3.value) == Rational(1));
    CHECK(chordal_distance(ProjPoint(1, 1), ProjPoint(0, 1), Archimedean{}).approx() ==
          doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    // [1:0] vs [9:1] at 3: cross term -1, so distance 1; [0:1] vs [9:1]: 9 -> 1/9.
    CHECK(std::get<Rational>(chordal_distance(ProjPoint(0, 1), ProjPoint(9, 1), BigInt(3)).value) == Rational(1, 9));
    CHECK_THROWS_AS(chordal_distance(P, P, BigInt(6)), PreconditionError);
}

TEST_CASE("chordal distance is bounded by one") {
    for (long a = -6; a <= 6; ++a) {
        for (long b = 1; b <= 6; ++b) {
            const ProjPoint P(a, b), Q(b, a == 0 ? 1 : a);
            for (const Place& v : {Place(BigInt(2)), Place(BigInt(3)), Place(Archimedean{})}) {
                const double d = chordal_distance(P, Q, v).approx();
                CHECK(d >= 0.0);
                CHECK(d <= 1.0 + 1e-15);
            }
        }
    }
}
