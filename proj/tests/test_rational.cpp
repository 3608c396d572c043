#include "opaq/rational.hpp"

#include <doctest.h>

using namespace opaq;

TEST_SUITE("rational") {
    TEST_CASE("parse accepts integers, decimals and fractions") {
        CHECK(parse_rational("7") == 7);
        CHECK(parse_rational("-3") == -3);
        CHECK(parse_rational("2.5") == Rational(5, 2));
        CHECK(parse_rational("5/2") == Rational(5, 2));
        CHECK(parse_rational("0.125") == Rational(1, 8));
        CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
        CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    }

    TEST_CASE("canonical text") {
        CHECK(to_string(Rational(3)) == "3");
        CHECK(to_string(Rational(11, 4)) == "2.75");
        CHECK(to_string(Rational(1, 3)) == "1/3");
        CHECK(to_string(Rational(-1, 2)) == "-0.5");
        for (const char* s : {"0", "2.5", "1/3", "7/6", "-4"}) CHECK(to_string(parse_rational(s)) == s);
    }

    TEST_CASE("floor and ceil") {
        CHECK(floor_div(Rational(5, 2)) == 2);
        CHECK(ceil_div(Rational(5, 2)) == 3);
        CHECK(floor_div(Rational(-1, 2)) == -1);
        CHECK(ceil_div(Rational(-1, 2)) == 0);
        CHECK(floor_div(Rational(4)) == 4);
        CHECK(is_integer(Rational(4)));
        CHECK_FALSE(is_integer(Rational(1, 2)));
        CHECK(lcm(Integer(4), Integer(6)) == 12);
    }

    TEST_CASE("delta bound") {
        CHECK(DeltaBound::parse("inf").is_infinite());
        CHECK(DeltaBound::parse("1.5").value() == Rational(3, 2));
        CHECK(DeltaBound::parse("3/2") == DeltaBound(Rational(3, 2)));
        CHECK(DeltaBound::parse("inf").to_string() == "inf");
        CHECK_THROWS(DeltaBound::parse("-1"));
        CHECK_THROWS(DeltaBound::parse("infinity"));
    }
}
