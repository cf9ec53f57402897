#include "doctest.h"

#include <stdexcept>
#include "contagion/rational.hpp"

using namespace contagion;

TEST_CASE("parse_rational accepts p/q, integers, and decimals") {
    CHECK(parse_rational("5/2") == Rational(5, 2));
    CHECK(parse_rational("4") == Rational(4));
    CHECK(parse_rational("2.5") == Rational(5, 2));
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("10.25") == Rational(41, 4));
    CHECK(parse_rational(" 3/2 ") == Rational(3, 2));
    CHECK(parse_rational("-1/3") == Rational(-1, 3));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("123456789012345678901234567890") ==
          Rational(BigInt("123456789012345678901234567890")));
}

TEST_CASE("parse_rational rejects malformed input") {
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("."), std::invalid_argument);
}

TEST_CASE("to_string is canonical") {
    CHECK(to_string(parse_rational("10/4")) == "5/2");
    CHECK(to_string(parse_rational("8/2")) == "4");
    CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("floor_to_uint64") {
    CHECK(floor_to_uint64(Rational(3, 2)) == 1);
    CHECK(floor_to_uint64(Rational(3)) == 3);
    CHECK(floor_to_uint64(Rational(0)) == 0);
    CHECK(floor_to_uint64(Rational(299, 100)) == 2);
    CHECK_THROWS_AS(floor_to_uint64(Rational(-1, 2)), std::invalid_argument);
}
