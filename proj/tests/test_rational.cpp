// Exact rational arithmetic: parsing, canonical printing, comparisons.

#include <stdexcept>

#include "doctest.h"
#include "errors.hpp"
#include "rational.hpp"

using csm::ParseError;
using csm::parse_rational;
using csm::Rat;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, 4) == Rat(-1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(5) == Rat(5, 1));
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
  CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
  CHECK(Rat(7, 10) - Rat(7, 10) == Rat(0));
  // A sum that would drift under doubles stays exact.
  Rat tenth(1, 10);
  Rat sum(0);
  for (int i = 0; i < 10; ++i) sum = sum + tenth;
  CHECK(sum == Rat(1));
}

TEST_CASE("comparisons are total and exact") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(2, 5) <= Rat(2, 5));
  CHECK(Rat(3, 7) > Rat(2, 5));
  CHECK(Rat(1, 1000000) > Rat(0));
  CHECK(Rat(39, 100) < Rat(2, 5));  // 0.39 < 0.40 without float rounding
}

TEST_CASE("parsing accepts integers, decimals, and fractions") {
  CHECK(parse_rational("12") == Rat(12));
  CHECK(parse_rational("-3") == Rat(-3));
  CHECK(parse_rational("0.85") == Rat(17, 20));
  CHECK(parse_rational("-0.125") == Rat(-1, 8));
  CHECK(parse_rational("3/8") == Rat(3, 8));
  CHECK(parse_rational("-21/50") == Rat(-21, 50));
  CHECK(parse_rational("0.39289") == Rat(39289, 100000));
}

TEST_CASE("parsing rejects malformed text") {
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
  CHECK_THROWS_AS(parse_rational("a/2"), ParseError);
  CHECK_THROWS_AS(parse_rational("++1"), ParseError);
  CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
}

TEST_CASE("printing is canonical: exact decimals when possible") {
  CHECK(csm::to_string(Rat(1, 2)) == "0.5");
  CHECK(csm::to_string(Rat(17, 20)) == "0.85");
  CHECK(csm::to_string(Rat(-1, 8)) == "-0.125");
  CHECK(csm::to_string(Rat(3)) == "3");
  CHECK(csm::to_string(Rat(-7)) == "-7");
  CHECK(csm::to_string(Rat(0)) == "0");
  // Denominators with other prime factors print as fractions.
  CHECK(csm::to_string(Rat(1, 3)) == "1/3");
  CHECK(csm::to_string(Rat(-2, 7)) == "-2/7");
}

TEST_CASE("parse and print round-trip") {
  for (const char* text : {"0.5", "0.85", "-0.125", "3", "-7", "0", "1/3", "-2/7", "0.39289"}) {
    CAPTURE(text);
    CHECK(csm::to_string(parse_rational(text)) == text);
  }
}

TEST_CASE("to_double is close for small rationals") {
  CHECK(Rat(1, 2).to_double() == doctest::Approx(0.5));
  CHECK(Rat(39289, 100000).to_double() == doctest::Approx(0.39289));
}
