#include "doctest.h"

#include "dioph/bounds.hpp"
#include "dioph/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace dioph;

namespace {

double d(const Real& x) { return x.convert_to<double>(); }

Real sqrt5() { return boost::multiprecision::sqrt(Real(5)); }

ExponentProfile extremal_profile() {
  auto [w2, h2] = extremal_pair();
  ExponentProfile p;
  p.extremal = true;
  p.set(Exponent::W, 1, ExponentValue::exact(1));
  p.set(Exponent::WHat, 1, ExponentValue::exact(1));
  p.set(Exponent::W, 2, ExponentValue::exact(w2));
  p.set(Exponent::WHat, 2, ExponentValue::exact(h2));
  return p;
}

const RuleResult& find(const std::vector<RuleResult>& rs, const std::string& clause) {
  auto it = std::find_if(rs.begin(), rs.end(), [&](const RuleResult& r) { return r.clause == clause; });
  REQUIRE(it != rs.end());
  return *it;
}

Real tomcat2_slack(const Real& what3) {
  ExponentProfile p;
  p.set(Exponent::WHat, 3, ExponentValue::exact(what3));
  return find(evaluate_rule("R4", p, 3, 3), "tomcat2").slack;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("closed forms") {
    const double eps = 1e-10;
    CHECK(d(abs(tomcat1(2) - (3 + sqrt5()) / 2)) < eps);
    CHECK(d(abs(tomcat1(2) - Real("2.6180339887"))) < eps);
    CHECK(d(abs(tomcat2() - Real("4.4142135623"))) < eps);
    CHECK(d(abs(tomcat1(3) - Real("4.5615528128"))) < eps);
    CHECK(d(abs(extremal_star_ceiling() - Real("3.9270509831"))) < eps);
    auto [w2, h2] = extremal_pair();
    CHECK(d(abs(w2 - (2 + sqrt5()))) < 1e-40);
    CHECK(d(abs(h2 - arbour_roy())) < 1e-40);
    CHECK(d(abs(closed_form("gliech-w") - w2)) == 0);
    CHECK(closed_form("dirichlet", 4) == 4);
    CHECK(closed_form("davenport-schmidt", 4) == 7);
    CHECK_THROWS_AS(closed_form("nonsense"), Error);
  }

  TEST_CASE("crossing identity") {
    for (int n = 2; n <= 12; ++n) {
      CAPTURE(n);
      CHECK(d(abs(borne1(n, crossing_point(n)) - tomcat1(n))) <= 1e-12);
      CHECK(d(abs(borne2(n, crossing_point(n)) - tomcat1(n))) <= 1e-12);
    }
  }

  TEST_CASE("improvement ladder") {
    Real prev = real_inf();
    for (int n = 3; n <= 50; ++n) {
      CAPTURE(n);
      Real t = tomcat1(n);
      CHECK(t > 2 * n - 2);
      CHECK(t < 2 * n - 1);
      Real eps = t - (2 * n - Real(3) / 2);
      CHECK(eps > 0);
      CHECK(eps < prev);
      prev = eps;
    }
  }

  TEST_CASE("limits at infinity") {
    CHECK(borne1(3, real_inf()) == 3);
    CHECK(fussball_floor(3, real_inf()) == 1);
    CHECK(d(abs(fussball_floor(3, Real(3)) - Real(5) / 3)) < 1e-40);
  }

  TEST_CASE("improved star floor") {
    for (int n = 3; n <= 40; ++n) {
      CAPTURE(n);
      Real f = improved_star_floor_min(n);
      CHECK(f > bertis(n));
      CHECK(f < Real(n) / 2 + 2);
    }
    ExponentProfile p;
    p.set(Exponent::WHat, 4, ExponentValue::exact(4));
    p.set(Exponent::WStar, 4, ExponentValue::exact(Real(1.2)));
    const RuleResult& r = find(evaluate_rule("R14", p, 4, 4), "improved floor");
    CHECK(r.status == RuleStatus::Violated);
    CHECK(d(abs(r.slack - (Real(1.2) - improved_star_floor(4, Real(4))))) < 1e-40);
  }

  TEST_CASE("tomcat2 violation") {
    CHECK(d(abs(tomcat2_slack(Real("4.5")) + Real("0.0858"))) <= 1e-4);
    ExponentProfile p;
    p.set(Exponent::WHat, 3, ExponentValue::exact(Real("4.5")));
    CHECK(find(evaluate_rule("R4", p, 3, 3), "tomcat2").status == RuleStatus::Violated);
    CHECK(find(evaluate_rule("R4", p, 3, 3), "tomcat1").status == RuleStatus::Satisfied);
    CHECK_FALSE(consistency_check(p).consistent());
  }

  TEST_CASE("slack decreases as the exponent grows") {
    Real prev = real_inf();
    for (int k = 0; k <= 20; ++k) {
      Real s = tomcat2_slack(Real(3) + Real(k) / 10);
      CHECK(s < prev);
      prev = s;
    }
  }

  TEST_CASE("brackets") {
    ExponentProfile p;
    p.set(Exponent::WHat, 3, ExponentValue::bracket(Real(4), Real(5)));
    const RuleResult& r = find(evaluate_rule("R4", p, 3, 3), "tomcat2");
    CHECK(r.status == RuleStatus::SatisfiedWithinUncertainty);
    CHECK(r.slack < 0);
    CHECK(r.slack_best > 0);
    p.set(Exponent::WHat, 3, ExponentValue::bracket(Real(4.6), Real(5)));
    CHECK(find(evaluate_rule("R4", p, 3, 3), "tomcat2").status == RuleStatus::Violated);
  }

  TEST_CASE("extremal profile") {
    ExponentProfile p = extremal_profile();
    BoundReport rep = consistency_check(p);
    CHECK(rep.violated == 0);
    CHECK(rep.consistent());
    auto r9 = evaluate_rule("R9", p, 2, 2);
    REQUIRE(r9.size() == 1);
    CHECK(r9[0].status == RuleStatus::Satisfied);
    CHECK(d(abs(r9[0].slack)) < 1e-40);
    auto r16 = evaluate_rule("R16", p, 0, 2);
    CHECK(find(r16, "w_2 = 2+sqrt5").status == RuleStatus::Satisfied);

    std::string text = slurp(std::string(DIOPH_TEST_DATA) + "/extremal.json");
    ExponentProfile q = parse_profile(text);
    CHECK(consistency_check(q).consistent());
    CHECK(d(abs(evaluate_rule("R9", q, 2, 2)[0].slack)) < 1e-40);
  }

  TEST_CASE("rules that constrain each other") {
    // Any w_hat_n accepted by R4 also passes the R2 ceiling.
    for (int n = 2; n <= 8; ++n) {
      ExponentProfile p;
      p.set(Exponent::WHat, n, ExponentValue::exact(tomcat1(n)));
      CHECK(find(evaluate_rule("R2", p, n, n), "w_hat_n <= 2n-1").status == RuleStatus::Satisfied);
      CHECK(find(evaluate_rule("R4", p, n, n), "tomcat1").status == RuleStatus::Satisfied);
    }
  }

  TEST_CASE("U_m corollary") {
    UmCorollary c = um_corollary(1, 3);
    CHECK(c.what_m == 1);
    CHECK(c.what_star_n == 1);
    CHECK(c.what_n == 3);
    c = um_corollary(2, 4);
    CHECK(c.what_m == 2);
    CHECK(c.what_star_n == 2);
    CHECK(c.what_n == 5);

    ExponentProfile p;
    p.set(Exponent::W, 1, ExponentValue::exact(real_inf()));
    p.set(Exponent::WHat, 1, ExponentValue::exact(1));
    p.set(Exponent::WHat, 2, ExponentValue::exact(2));
    p.set(Exponent::WHatStar, 2, ExponentValue::exact(1));
    REQUIRE(p.um_class() == 1);
    CHECK(consistency_check(p).consistent());
    p.set(Exponent::WHat, 2, ExponentValue::exact(Real(2.5)));
    CHECK_FALSE(consistency_check(p).consistent());
  }

  TEST_CASE("empty and algebraic profiles") {
    BoundReport empty = consistency_check(ExponentProfile{});
    CHECK(empty.consistent());
    CHECK(empty.satisfied == 0);
    ExponentProfile alg = extremal_profile();
    alg.transcendental = false;
    BoundReport r = consistency_check(alg);
    CHECK(r.inapplicable == r.results.size());
  }

  TEST_CASE("profile json round trip") {
    ExponentProfile p = extremal_profile();
    p.set(Exponent::WStar, 2, ExponentValue::bracket(Real(3), real_inf(), Provenance::Measured));
    ExponentProfile q = parse_profile(profile_to_json(p));
    CHECK(q.extremal);
    REQUIRE(q.values.size() == p.values.size());
    for (const auto& [k, v] : p.values) {
      const ExponentValue* w = q.get(k.first, k.second);
      REQUIRE(w);
      CHECK(w->provenance == v.provenance);
      CHECK(is_inf(w->hi) == is_inf(v.hi));
      if (!is_inf(v.hi)) CHECK(d(abs(w->hi - v.hi)) < 1e-25);
      CHECK(d(abs(w->lo - v.lo)) < 1e-25);
    }
    CHECK_THROWS_AS(parse_profile("{\"entries\":[{\"exponent\":\"q\",\"n\":1,\"value\":1}]}"), Error);
    CHECK_THROWS_AS(parse_profile("not json"), Error);
  }

  TEST_CASE("constants table") {
    std::string csv = constants_csv(2, 3);
    CHECK(csv.rfind("n,rule,quantity,value\n", 0) == 0);
    CHECK(csv.find("4.414213562373") != std::string::npos);
    CHECK(csv.find("2.618033988750") != std::string::npos);
  }
}
