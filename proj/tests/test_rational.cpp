#include <doctest.h>

#include <limits>
#include <random>
#include <sstream>

#include "tinpc/rational.hpp"

using tinpc::Rational;

TEST_CASE("parse and render in lowest terms") {
  CHECK(Rational::parse("3").to_string() == "3");
  CHECK(Rational::parse("-1/2").to_string() == "-1/2");
  CHECK(Rational::parse("0.25").to_string() == "1/4");
  CHECK(Rational::parse("-2.50").to_string() == "-5/2");
  CHECK(Rational::parse("0/7").to_string() == "0");
  CHECK(Rational(10, 4) == Rational(5, 2));
}

TEST_CASE("malformed input is rejected") {
  for (const char* bad : {"", "abc", "1/0", "1//2", "1/2/3", "--1", "6/-4", "0x10", "1 2"}) {
    CAPTURE(bad);
    CHECK_THROWS(Rational::parse(bad));
  }
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("arithmetic and ordering") {
  const Rational a(1, 3), b(-1, 6);
  CHECK(a + b == Rational(1, 6));
  CHECK(a - b == Rational(1, 2));
  CHECK(a * b == Rational(-1, 18));
  CHECK(a / b == Rational(-2));
  CHECK(b < a);
  CHECK(max(a, b) == a);
  CHECK(min(a, b) == b);
  CHECK(positive_part(b).is_zero());
  CHECK(positive_part(a) == a);
  CHECK_THROWS(a / Rational(0));
  std::ostringstream os;
  os << Rational(-7, 21);
  CHECK(os.str() == "-1/3");
}

TEST_CASE("overflow falls back to big integers exactly") {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  const Rational sum = big + big;
  CHECK(sum.to_string() == "18446744073709551614");
  CHECK(sum - big == big);
  const Rational tiny(1, std::numeric_limits<std::int64_t>::max());
  CHECK((tiny * tiny * big * big) == Rational(1));
  const Rational low(std::numeric_limits<std::int64_t>::min());
  CHECK((-low).to_string() == "9223372036854775808");
  CHECK(-(-low) == low);
  CHECK(low < big);
  CHECK(sum > big);
}

TEST_CASE("field laws on random small values") {
  std::mt19937_64 rng(5);
  auto draw = [&] {
    const auto n = static_cast<std::int64_t>(rng() % 2001) - 1000;
    const auto d = static_cast<std::int64_t>(rng() % 97) + 1;
    return Rational(n, d);
  };
  for (int it = 0; it < 2000; ++it) {
    const Rational a = draw(), b = draw(), c = draw();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(Rational::parse(a.to_string()) == a);
    CHECK((a < b) == (a.to_double() < b.to_double() && a != b));
  }
}
