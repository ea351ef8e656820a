#include <catch_amalgamated.hpp>

#include "fraisse/rational.hpp"

using namespace fraisse;

TEST_CASE("rationals serialize as p/q and round-trip") {
  CHECK(to_string(q(3)) == "3/1");
  CHECK(to_string(q(-6, 4)) == "-3/2");
  CHECK(parse_rational("7/5") == q(7, 5));
  CHECK(parse_rational("-2") == q(-2));
  CHECK(parse_rational("+4/8") == q(1, 2));
  for (int n = -20; n <= 20; ++n)
    for (int d = 1; d <= 9; ++d) CHECK(parse_rational(to_string(q(n, d))) == q(n, d));
}

TEST_CASE("malformed rationals are rejected") {
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("/3"), ParseError);
  CHECK_THROWS_AS(parse_ext_rational("-1/2"), ParseError);
}

TEST_CASE("floor and ceil agree with integer division") {
  for (int n = -30; n <= 30; ++n)
    for (int d = 1; d <= 7; ++d) {
      // Oracle: floor via repeated stepping.
      long f = 0;
      while (Q(f) > q(n, d)) --f;
      while (Q(f + 1) <= q(n, d)) ++f;
      CHECK(floor(q(n, d)) == f);
      CHECK(ceil(q(n, d)) == (Q(f) == q(n, d) ? f : f + 1));
    }
}

TEST_CASE("extended rationals order infinity last") {
  ExtRational inf = ExtRational::infinity();
  CHECK(ExtRational(q(1, 2)) < inf);
  CHECK(inf == inf);
  CHECK((inf + ExtRational(3)).is_infinite());
  CHECK(ExtRational(q(1, 3)) + ExtRational(q(1, 6)) == q(1, 2));
  CHECK(max(ExtRational(1), inf).is_infinite());
  CHECK(to_string(inf) == "inf");
  CHECK(parse_ext_rational("inf").is_infinite());
  CHECK(pow2_neg(3) == q(1, 8));
}
