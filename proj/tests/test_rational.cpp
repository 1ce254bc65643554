#include <doctest.h>

#include "dsg/rational.hpp"

using dsg::BigInt;
using dsg::Rational;

TEST_CASE("rational reduction and arithmetic") {
    Rational a(BigInt(2), BigInt(4));
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    CHECK((a + a) == Rational(1));
    CHECK((Rational(11, 9) - Rational(1)) == Rational(2, 9));
    CHECK((Rational(-1, 9) * Rational(3)) == Rational(-1, 3));
    CHECK((Rational(5, 9) / Rational(5)) == Rational(1, 9));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7).den() == 1);
}

TEST_CASE("rational ordering and ceilings") {
    CHECK(Rational(2, 9) < Rational(1, 4));
    CHECK(Rational(-1, 9) < Rational(0));
    CHECK(Rational(2, 9).ceil() == 1);
    CHECK(Rational(-2, 9).ceil() == 0);
    CHECK(Rational(2).ceil() == 2);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(1, 18).abs() == Rational(1, 18));
    CHECK(Rational(-5, 9).abs() == Rational(5, 9));
}

TEST_CASE("rational strings") {
    CHECK(Rational(11, 9).to_fraction_string() == "11/9");
    CHECK(Rational(-1, 9).to_fraction_string() == "-1/9");
    CHECK(Rational(1).to_fraction_string() == "1/1");
    CHECK(Rational(0).to_fraction_string() == "0/1");
    CHECK(Rational(1).to_string() == "1");
    CHECK(Rational::from_string("22/9") == Rational(22, 9));
    CHECK(Rational::from_string("-3") == Rational(-3));
}

TEST_CASE("floor division helpers") {
    CHECK(dsg::floor_div(BigInt(7), BigInt(2)) == 3);
    CHECK(dsg::floor_div(BigInt(-7), BigInt(2)) == -4);
    CHECK(dsg::floor_div(BigInt(7), BigInt(-2)) == -4);
    CHECK(dsg::mod_floor(BigInt(-7), BigInt(9)) == 2);
    CHECK(dsg::mod_floor(BigInt(12), BigInt(9)) == 3);
}
