#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "scorevote/rational.hpp"

using namespace scorevote;

TEST_CASE("parse and format round-trip") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational(" 6/8 ") == Rational(3, 4));
  CHECK(format_rational(Rational(3, 4)) == "3/4");
  CHECK(format_rational(Rational(8, 4)) == "2");
  CHECK(format_rational(Rational(-1, 3)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
}

TEST_CASE("canonical equality regardless of construction") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(parse_rational("10/15") == parse_rational("2/3"));
  CHECK(parse_rational("1/-2") == Rational(-1, 2));
}

TEST_CASE("is_integer and to_double") {
  CHECK(is_integer(Rational(4)));
  CHECK_FALSE(is_integer(Rational(1, 3)));
  CHECK(to_double(Rational(1, 2)) == doctest::Approx(0.5));
}

TEST_CASE("rationalize recovers small-denominator rationals exactly") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    const long long den = 1 + static_cast<long long>(rng() % 999);
    const long long num = static_cast<long long>(rng() % 2001) - 1000;
    const Rational q(num, den);
    CHECK(rationalize(to_double(q), 1'000'000) == q);
  }
}

TEST_CASE("rationalize respects the denominator cap") {
  const Rational r = rationalize(0.333333, 10);
  CHECK(r == Rational(1, 3));
  const Rational pi = rationalize(3.14159265358979, 1000);
  CHECK(boost::multiprecision::denominator(pi) <= 1000);
  CHECK(to_double(pi) == doctest::Approx(3.14159265358979).epsilon(1e-5));
  CHECK(rationalize(-0.25, 100) == Rational(-1, 4));
}
