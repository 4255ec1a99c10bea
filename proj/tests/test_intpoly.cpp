#include "doctest.h"

#include "dioph/errors.hpp"
#include "dioph/intpoly.hpp"
#include "dioph/realnum.hpp"
#include "dioph/roots.hpp"

using namespace dioph;

TEST_SUITE("intpoly") {
  TEST_CASE("height, degree and canonical form") {
    IntPolynomial p{4, -6, 0, 2};
    CHECK(p.degree() == 3);
    CHECK(p.height() == 6);
    CHECK(p.content() == 2);
    CHECK(p.primitive_part() == IntPolynomial{2, -3, 0, 1});
    CHECK((-p).canonical() == p);
    CHECK(IntPolynomial{0, 0}.is_zero());
    CHECK(parse_polynomial("[-2,0,1]") == IntPolynomial{-2, 0, 1});
    CHECK(IntPolynomial{-2, 0, 1}.to_string() == "[-2,0,1]");
  }

  TEST_CASE("arithmetic") {
    IntPolynomial a{-1, 1}, b{1, 1};
    CHECK(a * b == IntPolynomial{-1, 0, 1});
    CHECK(a + b == IntPolynomial{0, 2});
    CHECK((a - a).is_zero());
    CHECK(IntPolynomial{1, 2, 3}.derivative() == IntPolynomial{2, 6});
    CHECK(IntPolynomial{-2, 0, 1}.eval(Rat(3, 2)) == Rat(1, 4));
  }

  TEST_CASE("lex order reads from the top coefficient") {
    CHECK(lex_less(IntPolynomial{5, 1}, IntPolynomial{-5, 2}));
    CHECK(lex_less(IntPolynomial{-1, 1}, IntPolynomial{0, 1}));
    CHECK(lex_less(IntPolynomial{7}, IntPolynomial{0, 1}));
  }

  TEST_CASE("gcd and exact division") {
    IntPolynomial p = IntPolynomial{-1, 1} * IntPolynomial{2, 0, 1};
    IntPolynomial q = IntPolynomial{-1, 1} * IntPolynomial{3, 1};
    CHECK(gcd(p, q) == IntPolynomial{-1, 1});
    CHECK(divides(IntPolynomial{-1, 1}, p));
    CHECK(exact_quotient(p, IntPolynomial{-1, 1}) == IntPolynomial{2, 0, 1});
    CHECK_THROWS_AS(exact_quotient(p, IntPolynomial{1, 1}), Error);
  }

  TEST_CASE("small factorization") {
    Factorization f = factor_small(IntPolynomial{-4, 0, 0, 0, 1});
    CHECK(f.factors.size() == 2);
    CHECK(f.expand() == IntPolynomial{-4, 0, 0, 0, 1});
    CHECK(is_minimal_polynomial(IntPolynomial{-2, 0, 1}));
    CHECK_FALSE(is_minimal_polynomial(IntPolynomial{-4, 0, 2}));
    CHECK_FALSE(is_minimal_polynomial(IntPolynomial{-1, 0, 1}));
  }

  TEST_CASE("real roots are isolated and counted") {
    auto roots = real_roots(IntPolynomial{-2, 0, 1}, 80);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].hi() < 0);
    CHECK(roots[1].lo() * roots[1].lo() <= 2);
    CHECK(roots[1].hi() * roots[1].hi() >= 2);
    CHECK(roots[1].width() <= pow2(-80));
    CHECK(count_roots(IntPolynomial{-6, 11, -6, 1}, Rat(0), Rat(3)) == 3);
    CHECK(count_roots(IntPolynomial{-6, 11, -6, 1}, Rat(1), Rat(3)) == 2);
  }

  TEST_CASE("enumeration counts and order") {
    CHECK(polynomial_count(1, 1) == 4);
    CHECK(polynomial_count(2, 1) == 13);
    CHECK(polynomial_count(1, 2) == 12);
    auto all = enumerate(2, 2);
    CHECK(all.size() == 62);
    for (size_t i = 1; i < all.size(); ++i) CHECK(lex_less(all[i - 1], all[i]));
    for (const auto& p : all) CHECK(p.canonical() == p);
  }

  TEST_CASE("partitioned enumeration concatenates to the sequential order") {
    auto all = enumerate(2, 3);
    std::vector<IntPolynomial> joined;
    for (int part = 0; part < 5; ++part)
      for_each_polynomial_part(2, 3, part, 5, [&](const IntPolynomial& p) {
        joined.push_back(p);
        return true;
      });
    CHECK(joined == all);
  }

  TEST_CASE("enumeration respects the budget") {
    CHECK_THROWS_AS(enumerate(3, 10, 100), Error);
  }

  TEST_CASE("evaluation width and vanishing") {
    RealTarget r2 = parse_target("algroot:[-2,0,1]:1");
    IntPolynomial p{-7, 5};
    Enclosure v = evaluate(p, r2, 100);
    CHECK(v.lo() > Rat(71067, 1000000));
    CHECK(v.hi() < Rat(71068, 1000000));
    CHECK(v.width() <= Rat(7 * 2) * pow2(-99) * 2);
    CHECK(vanishes_exactly(IntPolynomial{-2, 0, 1}, r2) == ZeroStatus::Zero);
    CHECK(vanishes_exactly(IntPolynomial{-4, 0, 2}, r2) == ZeroStatus::Zero);
    CHECK(vanishes_exactly(IntPolynomial{-3, 0, 1}, r2) == ZeroStatus::Nonzero);
    CHECK(vanishes_exactly(IntPolynomial{-1, 3}, parse_target("rational:1/3")) == ZeroStatus::Zero);
    CHECK(vanishes_exactly(IntPolynomial{-1, 2}, parse_target("extremal:1,2")) == ZeroStatus::Nonzero);
  }
}
