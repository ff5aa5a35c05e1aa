#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "xsect/dyadic_number.hpp"

using xsect::Dyadic;
using oracle::Q;

TEST_SUITE("dyadic_number") {
  TEST_CASE("canonical form strips factors of two") {
    const Dyadic a = Dyadic::from_parts(12, 4);
    CHECK(a.numerator() == 3);
    CHECK(a.exponent() == 2);
    CHECK(Dyadic::from_parts(0, 9).exponent() == 0);
    CHECK(Dyadic::from_parts(3, -2) == Dyadic(12));
    CHECK(Dyadic::from_parts(8, 3) == Dyadic(1));
  }

  TEST_CASE("parse accepts integers, power-of-two fractions and exact decimals") {
    CHECK(Dyadic::parse("7") == Dyadic(7));
    CHECK(Dyadic::parse(" 5/16 ") == Dyadic::from_parts(5, 4));
    CHECK(Dyadic::parse("0.375") == Dyadic::from_parts(3, 3));
    CHECK(Dyadic::parse("-1/2") == Dyadic::from_parts(-1, 1));
    CHECK_THROWS(Dyadic::parse("1/3"));
    CHECK_THROWS(Dyadic::parse("0.1"));
    CHECK_THROWS(Dyadic::parse(""));
    CHECK_THROWS(Dyadic::parse("1/0"));
    CHECK_THROWS(Dyadic::parse("abc"));
  }

  TEST_CASE("printing") {
    CHECK(Dyadic::from_parts(5, 4).to_string() == "5/16");
    CHECK(Dyadic(3).to_string() == "3");
    CHECK(Dyadic::from_parts(-1, 1).to_string() == "-1/2");
    std::ostringstream os;
    os << Dyadic::from_parts(1, 2);
    CHECK(os.str() == "1/4");
    CHECK(Dyadic::parse(Dyadic::from_parts(123, 9).to_string()) == Dyadic::from_parts(123, 9));
  }

  TEST_CASE("scaling to a common exponent") {
    CHECK(Dyadic::from_parts(3, 2).scaled_to(5) == 24);
    CHECK(Dyadic::from_parts(3, 2).is_multiple_of_pow2(2));
    CHECK_FALSE(Dyadic::from_parts(3, 2).is_multiple_of_pow2(1));
    CHECK(xsect::pow2_inverse(3) == Dyadic::from_parts(1, 3));
  }

  TEST_CASE("overflow is reported, never wrapped") {
    const Dyadic big(std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(big + Dyadic(1), std::overflow_error);
    CHECK_THROWS_AS(big * Dyadic(2), std::overflow_error);
    CHECK_THROWS_AS(Dyadic::from_parts(1, 63), std::overflow_error);
    CHECK_THROWS_AS(xsect::pow2_inverse(40) * xsect::pow2_inverse(40), std::overflow_error);
  }

  TEST_CASE("arithmetic agrees with exact rationals") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> num(-(1 << 20), 1 << 20);
    std::uniform_int_distribution<int> ex(0, 20);
    for (int i = 0; i < 2000; ++i) {
      const Dyadic a = Dyadic::from_parts(num(rng), ex(rng));
      const Dyadic b = Dyadic::from_parts(num(rng), ex(rng));
      const Q qa = oracle::q(a);
      const Q qb = oracle::q(b);
      CHECK(oracle::q(a + b) == qa + qb);
      CHECK(oracle::q(a - b) == qa - qb);
      CHECK(oracle::q(a * b) == qa * qb);
      CHECK(oracle::q(-a) == -qa);
      CHECK(((a < b) == (qa < qb)));
      CHECK(((a == b) == (qa == qb)));
      CHECK(oracle::q(xsect::min(a, b)) == std::min(qa, qb));
      CHECK(oracle::q(xsect::max(a, b)) == std::max(qa, qb));
      CHECK(oracle::q(xsect::abs(a)) == abs(qa));
      const Dyadic s = a + b;
      CHECK((s.numerator() % 2 != 0 || s.exponent() == 0));
    }
  }

  TEST_CASE("to_double is exact on small values") {
    CHECK(Dyadic::from_parts(5, 4).to_double() == 0.3125);
    CHECK(Dyadic(-3).to_double() == -3.0);
  }
}
