#include "doctest.h"

#include "dioph/algapprox.hpp"
#include "dioph/errors.hpp"
#include "dioph/roots.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace dioph;

namespace {

const RealTarget& sqrt2() {
  static RealTarget t = parse_target("algroot:[-2,0,1]:1");
  return t;
}

// min H(alpha)|xi - alpha| over the plain approximant list.
std::pair<AlgebraicNumber, Enclosure> star_oracle(const RealTarget& t, int n, long H) {
  auto all = approximants(t, n, H);
  REQUIRE_FALSE(all.empty());
  std::optional<std::pair<AlgebraicNumber, Enclosure>> best;
  for (const auto& a : all) {
    Enclosure v = Rat(a.height()) * star_distance(a, t, 256);
    if (!best || v.certainly_below(best->second)) best = std::make_pair(a, v);
  }
  return *best;
}

Rat root_value(const AlgebraicNumber& a) {
  REQUIRE(a.minpoly.degree() == 1);
  return Rat(-a.minpoly.coeff(0), a.minpoly.coeff(1));
}

}  // namespace

TEST_SUITE("algapprox") {
  TEST_CASE("root isolation edge cases") {
    CHECK(real_roots(IntPolynomial{1, 0, 1}).empty());
    auto r = real_roots(IntPolynomial{1, -2, 1});
    REQUIRE(r.size() == 1);
    CHECK(r[0].contains(Rat(1)));
  }

  TEST_CASE("factorization examples") {
    Factorization f = factor_small(IntPolynomial{-6, 0, 6});
    CHECK(f.content == 6);
    CHECK(f.factors.size() == 2);
    CHECK(factor_small(IntPolynomial{-2, 0, 0, 1}).irreducible());
    CHECK_THROWS_AS(factor_small(IntPolynomial{1, 0, 0, 0, 0, 1}), Error);
  }

  TEST_CASE("factorization round trip over all small quartics") {
    for_each_polynomial(4, 3, [](const IntPolynomial& p) {
      if (p.degree() >= 1) {
        Factorization f = factor_small(p);
        if (f.expand() != p) FAIL(p.to_string());
        for (const auto& [q, mult] : f.factors)
          if (q.degree() >= 2 && !is_minimal_polynomial(q)) FAIL(q.to_string());
      }
      return true;
    });
  }

  TEST_CASE("approximants of degree 1 and height 2") {
    auto a = approximants(sqrt2(), 1, 2);
    std::set<Rat> values;
    for (const auto& x : a) values.insert(root_value(x));
    CHECK(values == std::set<Rat>{Rat(-2), Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1), Rat(2)});
    auto b = approximants(sqrt2(), 2, 1);
    bool golden = std::any_of(b.begin(), b.end(), [](const AlgebraicNumber& x) {
      return x.minpoly == IntPolynomial{-1, 1, 1} || x.minpoly == IntPolynomial{-1, -1, 1};
    });
    CHECK(golden);
    auto c = approximants(sqrt2(), 2, 2);
    CHECK(std::none_of(c.begin(), c.end(), [](const AlgebraicNumber& x) {
      return x.minpoly == IntPolynomial{-2, 0, 1} && x.root_index == 1;
    }));
    CHECK_THROWS_AS(approximants(sqrt2(), 5, 1), Error);
  }

  TEST_CASE("star table for sqrt 2 at degree 1") {
    GridSpec g;
    g.heights = {2, 5, 12, 17};
    StarTable t = psi_star_table(sqrt2(), 1, g);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0].witness.minpoly == IntPolynomial{-1, 1});
    CHECK(t.rows[1].witness.minpoly == IntPolynomial{-3, 2});
    CHECK(t.rows[2].witness.minpoly == IntPolynomial{-7, 5});
    CHECK(t.rows[3].witness.minpoly == IntPolynomial{-17, 12});
    for (size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].psi_star.hi() <= t.rows[i - 1].psi_star.hi());
  }

  TEST_CASE("star table excludes the target itself") {
    GridSpec g;
    g.heights = {3};
    StarTable t = psi_star_table(parse_target("rational:1/3"), 1, g);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].witness.minpoly == IntPolynomial{0, 1});
    CHECK(t.rows[0].psi_star.lo() == Rat(1, 3));
  }

  TEST_CASE("fast star scan matches the plain enumeration") {
    struct Case {
      const char* spec;
      int n;
      long H;
    };
    for (Case c : {Case{"algroot:[-2,0,1]:1", 2, 4}, Case{"extremal:1,2", 2, 5}, Case{"extremal:1,2", 3, 3},
                   Case{"digits:seed=5", 3, 3}, Case{"liouville:10:factorial", 2, 4}, Case{"rational:2/7", 2, 3}}) {
      RealTarget t = parse_target(c.spec);
      GridSpec g;
      g.heights = {c.H};
      StarTable fast = psi_star_table(t, c.n, g);
      auto [alpha, value] = star_oracle(t, c.n, c.H);
      std::string spec = c.spec;
      CAPTURE(spec);
      CHECK(fast.rows[0].witness.minpoly == alpha.minpoly);
      CHECK(fast.rows[0].witness.root_index == alpha.root_index);
      CHECK_FALSE(fast.rows[0].psi_star.certainly_below(value));
      CHECK_FALSE(value.certainly_below(fast.rows[0].psi_star));
    }
  }

  TEST_CASE("star witnesses are consistent with polynomial values") {
    RealTarget t = parse_target("extremal:1,2");
    GridSpec g;
    g.heights = {3, 6, 10};
    StarTable table = psi_star_table(t, 2, g);
    Rat m = std::max(Rat(1), t.magnitude_bound());
    for (const auto& row : table.rows) {
      const IntPolynomial& q = row.witness.minpoly;
      Enclosure d = star_distance(row.witness, t, 256);
      Rat span = m + d.hi();
      Rat bound = Rat(q.degree() * (q.degree() + 1) / 2) * Rat(q.height()) * d.hi();
      for (int i = 1; i < q.degree(); ++i) bound *= span;
      CHECK(evaluate(q, t, 256).abs().hi() <= bound);
    }
  }

  TEST_CASE("star records and estimates") {
    StarRecords r = star_records(sqrt2(), 1, 12);
    std::vector<Rat> values;
    for (const auto& e : r.entries) values.push_back(root_value(e.alpha));
    CHECK(values == std::vector<Rat>{Rat(1), Rat(3, 2), Rat(4, 3), Rat(7, 5)});
    ExponentEstimate e = estimate_star(r);
    CHECK(e.point >= 0.8);
    CHECK(e.point <= 1.6);

    StarRecords two = r;
    two.entries.resize(2);
    CHECK_THROWS_AS(estimate_star(two), Error);

    // The largest slope comes from the record at H = 5.
    ExponentEstimate d = estimate_star(star_records(parse_target("digits:seed=42"), 1, 500));
    CHECK(d.point >= 0.7);
    CHECK(d.point <= 1.6);
  }

  TEST_CASE("identity ordering") {
    auto a = approximants(parse_target("extremal:1,2"), 2, 2);
    for (size_t i = 1; i < a.size(); ++i) CHECK(identity_less(a[i - 1], a[i]));
    CHECK(a.front().to_string().find('#') != std::string::npos);
  }
}
