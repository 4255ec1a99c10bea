#include "doctest.h"

#include "oracles.hpp"

#include "dioph/errors.hpp"
#include "dioph/polysearch.hpp"

#include <algorithm>
#include <cmath>

using namespace dioph;

namespace {

const RealTarget& sqrt2() {
  static RealTarget t = parse_target("algroot:[-2,0,1]:1");
  return t;
}

std::vector<long> heights_of(const RecordSequence& rs) {
  std::vector<long> out;
  for (const auto& r : rs.entries) out.push_back(r.height.get_si());
  return out;
}

void check_against_oracle(const RealTarget& t, int n, long H) {
  PsiResult fast = psi(t, n, H);
  auto slow = oracle::psi(t, n, H);
  REQUIRE(slow);
  CAPTURE(H);
  CAPTURE(n);
  CHECK(fast.witness == slow->poly);
  CHECK_FALSE(fast.value.certainly_below(slow->value));
  CHECK_FALSE(slow->value.certainly_below(fast.value));
}

}  // namespace

TEST_SUITE("polysearch") {
  TEST_CASE("psi matches the brute-force oracle") {
    for (long H = 1; H <= 25; ++H) check_against_oracle(sqrt2(), 1, H);
    for (long H = 1; H <= 5; ++H) check_against_oracle(sqrt2(), 2, H);
    for (long H = 1; H <= 12; ++H) check_against_oracle(parse_target("rational:1/3"), 1, H);
    for (long H = 1; H <= 4; ++H) check_against_oracle(parse_target("extremal:1,2"), 2, H);
    for (long H = 1; H <= 2; ++H) check_against_oracle(parse_target("digits:seed=7"), 3, H);
    for (long H = 1; H <= 8; ++H) check_against_oracle(parse_target("liouville:10:factorial"), 1, H);
  }

  TEST_CASE("psi for sqrt 2 and 1/3") {
    PsiResult a = psi(sqrt2(), 1, 2);
    CHECK(a.witness == IntPolynomial{-1, 1});
    PsiResult b = psi(sqrt2(), 1, 7);
    CHECK(b.witness == IntPolynomial{-7, 5});
    CHECK(b.value.lo() > Rat(7106, 100000));
    CHECK(b.value.hi() < Rat(7107, 100000));
    for (long H : {1L, 2L, 10L, 50L}) {
      PsiResult c = psi(parse_target("rational:1/3"), 1, H);
      CHECK(c.value.lo() == Rat(1, 3));
      CHECK(c.value.hi() == Rat(1, 3));
      CHECK(c.witness == IntPolynomial{0, 1});
    }
  }

  TEST_CASE("records for sqrt 2 are the convergent numerators") {
    RecordSequence rs = records(sqrt2(), 1, 100, Strategy::Exhaustive);
    CHECK(heights_of(rs) == std::vector<long>{1, 3, 7, 17, 41, 99});
    CHECK(heights_of(records(sqrt2(), 1, 12, Strategy::Exhaustive)) == oracle::record_heights(sqrt2(), 1, 12));
    CHECK(heights_of(records(sqrt2(), 2, 6, Strategy::Exhaustive)) == oracle::record_heights(sqrt2(), 2, 6));
    CHECK(heights_of(records(sqrt2(), 2, 80, Strategy::Exhaustive)) == std::vector<long>{1, 2, 5, 12, 29, 70});
    for (size_t i = 1; i < rs.entries.size(); ++i) CHECK(rs.entries[i].value.hi() < rs.entries[i - 1].value.lo());
  }

  TEST_CASE("records for a rational target") {
    RecordSequence rs = records(parse_target("rational:1/3"), 1, 100, Strategy::Exhaustive);
    REQUIRE(rs.entries.size() == 1);
    CHECK(rs.entries[0].value.hi() == Rat(1, 3));
  }

  TEST_CASE("estimators") {
    RecordSequence rs = records(sqrt2(), 1, 12, Strategy::Exhaustive);
    ExponentEstimate e = estimate_ordinary(rs, 1);
    CHECK(e.point >= 1.0);
    CHECK(e.point <= 1.6);
    CHECK(e.lower <= e.point);
    CHECK(e.point <= e.upper);
    RecordSequence single = records(parse_target("rational:1/3"), 1, 10, Strategy::Exhaustive);
    CHECK_THROWS_AS(estimate_ordinary(single, 1), Error);

    GridSpec g;
    g.heights = {5, 8, 12, 18, 27, 41};
    ExponentEstimate u = estimate_uniform(psi_table(sqrt2(), 1, g, Strategy::Exhaustive), 0.5);
    CHECK(u.point >= 0.7);
    CHECK(u.point <= 1.4);
    ExponentEstimate l =
        estimate_uniform(psi_table(parse_target("liouville:10:factorial"), 1, g, Strategy::Exhaustive), 0.5);
    CHECK(l.point <= 1.3);

    GridSpec three;
    three.heights = {5, 8, 12};
    CHECK_THROWS_AS(estimate_uniform(psi_table(sqrt2(), 1, three, Strategy::Exhaustive)), Error);
  }

  TEST_CASE("liouville record slopes") {
    RecordSequence rs = records(parse_target("liouville:10:factorial"), 1, 2000000, Strategy::Hybrid);
    std::vector<double> rational;
    for (const auto& r : rs.entries)
      if (r.height == 100 || r.height == 1000000) rational.push_back(rational_slope(r));
    REQUIRE(rational.size() == 2);
    CHECK(rational[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(rational[1] == doctest::Approx(4.0).epsilon(1e-9));
    // |P| slopes sit one below the rational ones.
    CHECK(estimate_ordinary(rs, 2).point == doctest::Approx(3.0).epsilon(1e-9));
  }

  TEST_CASE("grids") {
    CHECK(grid_heights(GridSpec{}) == std::vector<long>{5, 8, 11, 17, 25, 38});
    CHECK(grid_heights(GridSpec{7, 1.5, 1, {}}) == std::vector<long>{7});
    ApproximationTable t = psi_table(sqrt2(), 1, GridSpec{}, Strategy::Exhaustive);
    REQUIRE(t.rows.size() == 6);
    for (size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].psi.hi() <= t.rows[i - 1].psi.hi());
  }

  TEST_CASE("pigeonhole bound and monotonicity in n") {
    GridSpec g;
    g.heights = {2, 5, 9, 15};
    for (const char* spec : {"extremal:1,2", "digits:seed=3", "liouville:10:factorial"}) {
      RealTarget t = parse_target(spec);
      Rat mag = t.magnitude_bound();
      std::vector<ApproximationTable> tables;
      for (int n = 1; n <= 3; ++n) tables.push_back(psi_table(t, n, g, Strategy::Exhaustive));
      for (int n = 1; n <= 3; ++n)
        for (size_t i = 0; i < g.heights.size(); ++i) {
          const TableRow& row = tables[static_cast<size_t>(n - 1)].rows[i];
          CHECK(row.psi.hi() <= dirichlet_bound(n, row.height, mag));
          if (n > 1) CHECK(row.psi.hi() <= tables[static_cast<size_t>(n - 2)].rows[i].psi.hi());
        }
    }
  }

  TEST_CASE("degenerate exclusion for algebraic targets") {
    PsiResult p = psi(sqrt2(), 2, 10);
    CHECK(vanishes_exactly(p.witness, sqrt2()) == ZeroStatus::Nonzero);
    CHECK(p.witness.primitive_part() != IntPolynomial{-2, 0, 1});
  }

  TEST_CASE("lattice candidates") {
    auto c = lattice_candidates(sqrt2(), 1, Int(10000));
    bool found = std::any_of(c.begin(), c.end(), [](const LatticeCandidate& k) {
      return k.poly == IntPolynomial{-41, 29} || k.poly == IntPolynomial{-29, 41} || k.poly == IntPolynomial{-99, 70};
    });
    CHECK(found);
    CHECK_FALSE(lattice_candidates(parse_target("digits:seed=1"), 2, Int(2)).empty());
    auto e = lattice_candidates(parse_target("extremal:1,2"), 2, Int(100000000));
    bool deep = std::any_of(e.begin(), e.end(), [](const LatticeCandidate& k) {
      double h = k.height.get_d();
      return h >= 2 && k.value.hi_double() < std::pow(h, -3.0);
    });
    CHECK(deep);
    for (size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1].height <= e[i].height);
  }

  TEST_CASE("hybrid records agree with exhaustive records and never beat psi") {
    RealTarget t = parse_target("extremal:1,2");
    SearchPolicy hp;
    hp.exhaustive_limit = 60;
    RecordSequence ex = records(t, 2, 400, Strategy::Exhaustive);
    RecordSequence hy = records(t, 2, 400, Strategy::Hybrid, hp);
    CHECK(heights_of(hy) == heights_of(ex));
    for (const auto& r : hy.entries) {
      if (r.certified) continue;
      PsiResult best = psi(t, 2, r.height.get_si());
      CHECK_FALSE(r.value.certainly_below(best.value));
    }
  }

  TEST_CASE("results do not depend on the worker count") {
    RealTarget t = parse_target("digits:seed=42");
    SearchPolicy one, many;
    one.workers = 1;
    many.workers = 7;
    GridSpec g;
    g.heights = {5, 11, 23, 40};
    ApproximationTable a = psi_table(t, 2, g, Strategy::Exhaustive, one);
    ApproximationTable b = psi_table(t, 2, g, Strategy::Exhaustive, many);
    for (size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].witness == b.rows[i].witness);
      CHECK(a.rows[i].psi.hi() == b.rows[i].psi.hi());
    }
  }

  TEST_CASE("budget guard") {
    SearchPolicy tiny;
    tiny.budget = 10;
    CHECK_THROWS_AS(psi(sqrt2(), 2, 10, tiny), Error);
    try {
      psi(sqrt2(), 2, 10, tiny);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OverflowGuard);
    }
  }
}
