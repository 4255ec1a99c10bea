#include "doctest.h"

#include "dioph/errors.hpp"
#include "dioph/realnum.hpp"
#include "dioph/resultants.hpp"

using namespace dioph;

namespace {

Rat pow_rat(Rat x, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

Int factorial(int k) {
  Int r(1);
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// The lemma's inequality evaluated directly in exact rationals.
bool bound_by_hand(const IntPolynomial& p, const IntPolynomial& q, const Rat& xi) {
  int s = p.degree(), t = q.degree();
  Rat m = std::max(Rat(1), Rat(abs(xi)));
  Rat k = Rat(factorial(s + t)) * pow_rat(m, std::max(s, t) - 1);
  Rat hp(p.height()), hq(q.height());
  Rat tp = abs(p.eval(xi)) * pow_rat(hp, t - 1) * pow_rat(hq, s);
  Rat tq = abs(q.eval(xi)) * pow_rat(hp, t) * pow_rat(hq, s - 1);
  Rat res = abs(Rat(resultant(p, q)));
  return res >= 1 && res <= k * std::max(tp, tq);
}

}  // namespace

TEST_SUITE("resultants") {
  TEST_CASE("sylvester matrices") {
    IntMatrix m = sylvester(IntPolynomial{-1, 1}, IntPolynomial{1, 1});
    CHECK(m == IntMatrix{{1, -1}, {1, 1}});
    CHECK(determinant(sylvester(IntPolynomial{-2, 0, 1}, IntPolynomial{-1, 1})) == -1);
    CHECK(determinant(sylvester(IntPolynomial{1, 0, 1}, IntPolynomial{-1, 0, 1})) == 4);
    CHECK_THROWS_AS(sylvester(IntPolynomial{3}, IntPolynomial{1, 1}), Error);
  }

  TEST_CASE("resultant values") {
    CHECK(resultant(IntPolynomial{-2, 0, 1}, IntPolynomial{-1, 1}) == -1);
    CHECK(resultant(IntPolynomial{-1, 1}, IntPolynomial{-1, 0, 1}) == 0);
    // The standard Sylvester determinant gives -5 here; only |Res| = 5 is convention free.
    CHECK(abs(resultant(IntPolynomial{1, 2}, IntPolynomial{-1, 3})) == 5);
  }

  TEST_CASE("determinant by fraction-free elimination") {
    CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
    CHECK(determinant(IntMatrix{{2, 0, 1}, {1, 3, 2}, {1, 1, 2}}) == 6);
    CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
  }

  TEST_CASE("swap symmetry and vanishing on small pairs") {
    auto polys = enumerate(2, 2);
    std::vector<IntPolynomial> nonconst;
    for (auto& p : polys)
      if (p.degree() >= 1) nonconst.push_back(p);
    for (size_t i = 0; i < nonconst.size(); i += 3)
      for (size_t j = 0; j < nonconst.size(); j += 2) {
        const auto& p = nonconst[i];
        const auto& q = nonconst[j];
        Int r = resultant(p, q);
        int sign = (p.degree() * q.degree()) % 2 ? -1 : 1;
        CHECK(r == sign * resultant(q, p));
        CHECK((r == 0) == (gcd(p, q).degree() >= 1));
      }
  }

  TEST_CASE("lemma examples") {
    RealTarget r2 = parse_target("algroot:[-2,0,1]:1");
    LemmaCertificate c = lemma_check(IntPolynomial{-1, 1}, IntPolynomial{1, 1}, r2);
    CHECK(abs(c.resultant) == 2);
    CHECK(c.bound_holds);
    CHECK(c.verdict == LemmaBranch::Q);

    LemmaCertificate d = lemma_check(IntPolynomial{-2, 0, 1}, IntPolynomial{-1, 1}, parse_target("rational:1/3"));
    CHECK(d.bound_holds);
    CHECK(d.slack_ratio >= 1);

    CHECK_THROWS_AS(lemma_check(IntPolynomial{-1, 1}, IntPolynomial{-1, 1}, r2), Error);
    CHECK_THROWS_AS(lemma_check(IntPolynomial{-1, 1}, IntPolynomial{1, 1}, parse_target("rational:0")), Error);
    CHECK_THROWS_AS(lemma_check(IntPolynomial{-1, 2}, IntPolynomial{1, 1}, parse_target("rational:1/2")), Error);
  }

  TEST_CASE("explicit constant agrees with an exact hand evaluation") {
    auto polys = enumerate(2, 2);
    for (const Rat& xi : {Rat(1, 3), Rat(-3, 2), Rat(7, 4)}) {
      RealTarget t = RealTarget::rational(xi);
      for (size_t i = 0; i < polys.size(); i += 2)
        for (size_t j = 1; j < polys.size(); j += 3) {
          const auto& p = polys[i];
          const auto& q = polys[j];
          if (p.degree() < 1 || q.degree() < 1 || gcd(p, q).degree() >= 1) continue;
          if (p.eval(xi) == 0 || q.eval(xi) == 0) continue;
          LemmaCertificate c = lemma_check(p, q, t);
          CHECK(c.bound_holds);
          CHECK(bound_by_hand(p, q, xi));
        }
    }
  }

  TEST_CASE("fuzzing") {
    FuzzConfig cfg;
    cfg.trials = 200;
    FuzzReport a = lemma_fuzz(cfg);
    CHECK(a.valid == 200);
    CHECK(a.failures.empty());
    CHECK(a.worst_slack >= 1);
    cfg.workers = 1;
    FuzzReport b = lemma_fuzz(cfg);
    REQUIRE(b.certificates.size() == a.certificates.size());
    for (size_t i = 0; i < a.certificates.size(); ++i) CHECK(a.certificates[i].p == b.certificates[i].p);

    FuzzConfig one;
    one.trials = 1;
    one.degree = 1;
    one.height = 1;
    one.xi_lo = one.xi_hi = Rat(1, 2);
    one.seed = 0;
    CHECK(lemma_fuzz(one).valid == 1);

    FuzzConfig none;
    none.trials = 0;
    FuzzReport z = lemma_fuzz(none);
    CHECK(z.trials == 0);
    CHECK(z.certificates.empty());
  }
}
