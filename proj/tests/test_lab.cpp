#include "doctest.h"

#include "dioph/errors.hpp"
#include "dioph/lab.hpp"

#include <filesystem>

using namespace dioph;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

ExperimentConfig small_config(const std::string& target = "algroot:[-2,0,1]:1") {
  ExperimentConfig c;
  c.target = target;
  c.degrees = {1, 2};
  c.grid.h0 = 4;
  c.grid.ratio = 1.6;
  c.grid.points = 6;
  c.max_height = 40;
  c.star_max_height = 20;
  return c;
}

}  // namespace

TEST_SUITE("lab") {
  TEST_CASE("config round trip") {
    ExperimentConfig c = small_config("digits:seed=9");
    c.strategy = Strategy::Hybrid;
    c.tail = 0.375;
    c.bracket_constant = 2.5;
    c.exhaustive_limit = 30;
    c.grid.heights = {3, 7, 19};
    c.star_mixed = true;
    ExperimentConfig d = parse_config(config_to_text(c));
    CHECK(d == c);
    CHECK(config_to_text(d) == config_to_text(c));

    ExperimentConfig e = parse_config("# comment\ntarget = extremal:1,2\ndegrees = 2,3\n\ngrid.points = 4\n");
    CHECK(e.target == "extremal:1,2");
    CHECK(e.degrees == std::vector<int>{2, 3});
    CHECK(e.grid.points == 4);
    CHECK(code_of([] { parse_config("frobnicate = 1\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_config("degrees = two\n"); }) == ErrorCode::ParseError);
  }

  TEST_CASE("identical runs give identical bundles") {
    ExperimentConfig c = small_config();
    c.workers = 1;
    ResultBundle a = run(c);
    c.workers = 3;
    ResultBundle b = run(c);
    CHECK_FALSE(a.budget_exceeded);
    CHECK(a.warnings == b.warnings);
    CHECK_FALSE(a.transcendental);
    // The worker count is part of the config text, so compare everything else.
    nlohmann::json ja = bundle_to_json(a, false), jb = bundle_to_json(b, false);
    ja.erase("config");
    jb.erase("config");
    CHECK(ja.dump() == jb.dump());
    CHECK(compare(bundle_to_json(a), bundle_to_json(b)).empty());
    REQUIRE(a.degrees.size() == 2);
    CHECK(a.degrees[0].w);
    CHECK(a.degrees[1].w_hat_star);
  }

  TEST_CASE("bundle files") {
    ExperimentConfig c = small_config();
    auto dir = std::filesystem::temp_directory_path() / "dioph_lab_test";
    std::filesystem::remove_all(dir);
    c.out = dir.string();
    ResultBundle a = run(c);
    for (const char* f : {"bundle.json", "psi_n1.csv", "psi_n2.csv", "records_n1.csv", "star_n2.csv",
                          "star_records_n1.csv", "bounds.csv"})
      CHECK(std::filesystem::exists(dir / f));
    nlohmann::json j = load_bundle((dir / "bundle.json").string());
    CHECK(j.at("target") == a.target);
    CHECK(compare(j, bundle_to_json(a)).empty());
    std::string psi = table_export(j, "psi", 1);
    CHECK(psi.rfind("H,psi_lo,psi_hi,witness,strategy\n", 0) == 0);
    CHECK(table_export(j, "star", 2).rfind("H,psi_star_lo,psi_star_hi,witness_minpoly,witness_root_index\n", 0) == 0);
    CHECK(table_export(j, "records", 1).rfind("H,value_lo,value_hi,poly,certified\n", 0) == 0);
    CHECK(table_export(j, "bounds").rfind("n,rule,quantity,value\n", 0) == 0);
    CHECK(code_of([&] { table_export(j, "psi", 4); }) == ErrorCode::MissingTable);
    CHECK(code_of([&] { table_export(j, "nonsense", 1); }) == ErrorCode::MissingTable);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("star tables above degree 4 are missing") {
    ExperimentConfig c = small_config("extremal:1,2");
    c.degrees = {5};
    c.grid.heights = {1, 2};
    c.max_height = 2;
    ResultBundle b = run(c);
    CHECK_FALSE(b.degrees[0].star_table);
    CHECK(code_of([&] { table_export(bundle_to_json(b), "star", 5); }) == ErrorCode::MissingTable);
  }

  TEST_CASE("budget overruns leave a partial bundle") {
    ExperimentConfig c = small_config("extremal:1,2");
    c.budget = 10;
    ResultBundle b = run(c);
    CHECK(b.budget_exceeded);
    CHECK_FALSE(b.warnings.empty());
    CHECK(code_of([&] { require_complete(b); }) == ErrorCode::BudgetExceeded);
  }

  TEST_CASE("compare") {
    ResultBundle a = run(small_config());
    ResultBundle b = run(small_config("extremal:1,2"));
    CHECK(code_of([&] { compare(bundle_to_json(a), bundle_to_json(b)); }) == ErrorCode::IncompatibleBundles);

    ExperimentConfig h = small_config();
    h.strategy = Strategy::Hybrid;
    h.exhaustive_limit = 10;
    ResultBundle c = run(h);
    DiffReport diff = compare(bundle_to_json(a), bundle_to_json(c));
    CHECK_FALSE(diff.comparable_settings);
    CHECK_FALSE(diff.witnesses_differ);
    for (const auto& r : diff.rows) {
      CAPTURE(r.height);
      CHECK(r.table == "psi");
      CHECK(r.height > 10);
    }
    CHECK_FALSE(diff_to_text(diff).empty());
  }

  TEST_CASE("exhaustive and hybrid agree where both are exhaustive") {
    ExperimentConfig e = small_config();
    e.degrees = {2};
    ExperimentConfig h = e;
    h.strategy = Strategy::Hybrid;
    h.exhaustive_limit = 13;
    ResultBundle a = run(e), b = run(h);
    const auto& ta = a.degrees[0].table->rows;
    const auto& tb = b.degrees[0].table->rows;
    REQUIRE(ta.size() == tb.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
      if (ta[i].height > 13) continue;
      CHECK(ta[i].witness == tb[i].witness);
    }
  }

  TEST_CASE("mixed star estimate is optional") {
    ExperimentConfig c = small_config("extremal:1,2");
    c.degrees = {2};
    ResultBundle off = run(c);
    CHECK_FALSE(off.degrees[0].w_star_mixed);
    CHECK_FALSE(bundle_to_json(off)["degrees"][0]["estimates"].contains("w_star_mixed"));
    c.star_mixed = true;
    ResultBundle on = run(c);
    REQUIRE(on.degrees[0].w_star_mixed);
    CHECK(on.degrees[0].w_star_mixed->point >= on.degrees[0].w_hat_star->point);
    CHECK(compare(bundle_to_json(off), bundle_to_json(on)).estimates.size() == 1);
  }

  TEST_CASE("derived profile") {
    ExperimentConfig c = small_config("digits:seed=9");
    c.degrees = {1};
    c.grid.points = 9;
    c.max_height = 2000;
    ResultBundle b = run(c);
    CHECK(b.transcendental);
    const ExponentValue* w = b.profile.get(Exponent::W, 1);
    REQUIRE(w);
    CHECK(w->provenance == Provenance::Measured);
    CHECK(w->lo < w->hi);
    CHECK(b.report.consistent());
  }
}
