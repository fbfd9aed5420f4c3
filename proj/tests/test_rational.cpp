#include "doctest.h"
#include "kinship/errors.hpp"
#include "kinship/rational.hpp"

using kinship::Error;
using kinship::ErrorCode;
using kinship::Rational;

TEST_CASE("rational is stored in lowest terms with positive denominator") {
  const Rational r(6, -4);
  CHECK(r.to_string() == "-3/2");
  CHECK(Rational(0, 7).to_string() == "0");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-2/6") == Rational(-1, 3));
  CHECK(Rational::parse("+3") == Rational(3));
}

TEST_CASE("rational arithmetic is exact") {
  const Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(third * Rational(3, 7) == Rational(1, 7));
  CHECK(Rational(1) / Rational(3) - third == Rational(0));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(kinship::abs(Rational(-5, 9)) == Rational(5, 9));
  // Beyond 64-bit range.
  Rational big = Rational::parse("1/18446744073709551616");
  CHECK((big * Rational::parse("18446744073709551616")) == Rational(1));
}

TEST_CASE("rational parse rejects malformed text") {
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "1.5", "a/b", "1/-2", "1//2", "--1"}) {
    CAPTURE(bad);
    try {
      (void)Rational::parse(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Syntax);
    }
  }
}

TEST_CASE("division by zero is an error") {
  CHECK_THROWS_AS((void)(Rational(1) / Rational(0)), Error);
}
