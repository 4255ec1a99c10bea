#include "doctest.h"

#include "dioph/errors.hpp"
#include "dioph/realnum.hpp"

using namespace dioph;

TEST_SUITE("realnum") {
  TEST_CASE("rational targets evaluate to points") {
    RealTarget t = parse_target("rational:7/5");
    CHECK(t.kind() == TargetKind::Rational);
    CHECK(t.rational_value() == Rat(7, 5));
    CHECK(t.eval(64).contains(Rat(7, 5)));
    CHECK(t.eval(64).width() <= pow2(-64));
    CHECK_FALSE(t.transcendental());
  }

  TEST_CASE("algebraic root of x^2 - 2") {
    RealTarget t = parse_target("algroot:[-2,0,1]:1");
    Enclosure e = t.eval(200);
    CHECK(e.width() <= pow2(-200));
    CHECK(e.lo() * e.lo() <= Rat(2));
    CHECK(e.hi() * e.hi() >= Rat(2));
    CHECK(t.minimal_polynomial() == IntPolynomial{-2, 0, 1});
    CHECK(parse_target("algroot:[-2,0,1]:0").eval(64).hi() < 0);
  }

  TEST_CASE("convergents of sqrt 2 through its periodic expansion") {
    RealTarget t = parse_target("cf:1;2");
    CHECK(convergent(t, 0) == Rat(1));
    CHECK(convergent(t, 1) == Rat(3, 2));
    CHECK(convergent(t, 2) == Rat(7, 5));
    CHECK(convergent(t, 3) == Rat(17, 12));
    CHECK(continued_fraction_of(t.eval(64)).size() > 10);
  }

  TEST_CASE("fibonacci word drives the extremal expansion") {
    auto w = fibonacci_word_prefix(1, 2, 8);
    CHECK(w == std::vector<long>{1, 2, 1, 1, 2, 1, 2, 1});
    RealTarget t = parse_target("extremal:1,2");
    CHECK(t.kind() == TargetKind::FibonacciWordCF);
    CHECK(t.transcendental());
    CHECK(t.cf_term(1) == 1);
    CHECK(t.cf_term(2) == 2);
  }

  TEST_CASE("liouville partial sums and tail") {
    RealTarget t = parse_target("liouville:10:factorial");
    CHECK(convergent(t, 1) == Rat(1, 10));
    CHECK(convergent(t, 2) == Rat(11, 100));
    CHECK(convergent(t, 3) == Rat(110001, 1000000));
    Enclosure e = t.eval(100);
    CHECK(e.contains(Rat(110001, 1000000) + Rat(Int(1), Int("1000000000000000000000000"))));
  }

  TEST_CASE("digit streams are reproducible and seed dependent") {
    Enclosure a = parse_target("digits:seed=42").eval(128);
    Enclosure b = parse_target("digits:seed=42").eval(128);
    Enclosure c = parse_target("digits:seed=43").eval(128);
    CHECK(a.lo() == b.lo());
    CHECK(a.hi() == b.hi());
    CHECK((a.hi() < c.lo() || c.hi() < a.lo()));
    CHECK(splitmix64(1) == splitmix64(1));
    CHECK(splitmix64(1) != splitmix64(2));
  }

  TEST_CASE("malformed target strings are rejected") {
    for (const char* bad : {"", "rational:", "rational:1/0", "algroot:[1,0,1]:0", "extremal:1", "digits:42",
                            "cf:1;0", "nonsense:3"}) {
      std::string text = bad;
      CAPTURE(text);
      CHECK_THROWS_AS(parse_target(bad), Error);
    }
  }
}
