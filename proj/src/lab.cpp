#include "dioph/lab.hpp"

#include "dioph/decimal.hpp"
#include "dioph/errors.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dioph {

using nlohmann::json;

namespace {

constexpr int kDigits = 17;

std::string lo_str(const Rat& x) { return format_decimal(x, kDigits, Rounding::Down); }
std::string hi_str(const Rat& x) { return format_decimal(x, kDigits, Rounding::Up); }

std::string resolve_target(const ExperimentConfig& c) {
  if (c.target == "digits") return "digits:seed=" + std::to_string(c.seed);
  return c.target;
}

SearchPolicy policy_of(const ExperimentConfig& c) {
  SearchPolicy p;
  p.precision_cap = c.precision_cap;
  p.budget = c.budget;
  p.workers = c.workers;
  p.exhaustive_limit = c.exhaustive_limit;
  p.lattice_cap_bits = c.lattice_cap_bits;
  return p;
}

json estimate_json(const std::optional<ExponentEstimate>& e) {
  if (!e) return nullptr;
  return {{"point", e->point},
          {"lower", e->lower},
          {"upper", e->upper},
          {"samples", e->samples},
          {"strategy", std::string(to_string(e->strategy))}};
}

json table_json(const ApproximationTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"H", r.height},
                    {"psi_lo", lo_str(r.psi.lo())},
                    {"psi_hi", hi_str(r.psi.hi())},
                    {"witness", r.witness.to_string()},
                    {"strategy", r.exhaustive ? "exhaustive" : "hybrid"}});
  return {{"rows", rows}, {"warnings", t.warnings}};
}

json records_json(const RecordSequence& rs) {
  json rows = json::array();
  for (const auto& r : rs.entries)
    rows.push_back({{"H", r.height.get_str()},
                    {"value_lo", lo_str(r.value.lo())},
                    {"value_hi", hi_str(r.value.hi())},
                    {"poly", r.poly.to_string()},
                    {"certified", r.certified}});
  return {{"strategy", std::string(to_string(rs.strategy))}, {"entries", rows}, {"warnings", rs.warnings}};
}

json star_table_json(const StarTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"H", r.height},
                    {"psi_star_lo", lo_str(r.psi_star.lo())},
                    {"psi_star_hi", hi_str(r.psi_star.hi())},
                    {"witness_minpoly", r.witness.minpoly.to_string()},
                    {"witness_root_index", r.witness.root_index}});
  return {{"rows", rows}, {"warnings", t.warnings}};
}

json star_records_json(const StarRecords& s) {
  json rows = json::array();
  for (const auto& r : s.entries)
    rows.push_back({{"H", r.alpha.height().get_str()},
                    {"distance_lo", lo_str(r.distance.lo())},
                    {"distance_hi", hi_str(r.distance.hi())},
                    {"witness_minpoly", r.alpha.minpoly.to_string()},
                    {"witness_root_index", r.alpha.root_index}});
  return {{"entries", rows}, {"warnings", s.warnings}};
}

// Largest grid height whose star enumeration fits the budget.
long star_cap(const ExperimentConfig& c, int n, const std::vector<long>& heights) {
  if (c.star_max_height > 0) return c.star_max_height;
  const Int budget(std::to_string(c.budget));
  long cap = 0;
  for (long h : heights)
    if (polynomial_count(n, h) <= budget) cap = h;
  return cap;
}

ExponentValue bracketed(const ExponentEstimate& e, long top_height, double k) {
  double u = top_height >= 2 ? k / std::log(static_cast<double>(top_height)) : k;
  return ExponentValue::bracket(Real(e.lower - u), Real(e.upper + u), Provenance::Measured);
}

template <class F>
void stage(ResultBundle& b, int n, const char* what, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::ParseError) throw;
    if (e.code() == ErrorCode::OverflowGuard) b.budget_exceeded = true;
    b.warnings.push_back("n=" + std::to_string(n) + " " + what + ": " + e.what());
  }
}

}  // namespace

ResultBundle run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ResultBundle b;
  b.config = config;
  RealTarget target = parse_target(resolve_target(config));
  b.target = target.label();
  b.transcendental = target.transcendental();
  b.profile.transcendental = b.transcendental;
  b.profile.extremal = target.kind() == TargetKind::FibonacciWordCF;

  const SearchPolicy policy = policy_of(config);
  const std::vector<long> heights = grid_heights(config.grid);
  const long max_height = config.max_height > 0 ? config.max_height : heights.back();

  for (int n : config.degrees) {
    DegreeResult d;
    d.n = n;
    stage(b, n, "psi table", [&] { d.table = psi_table(target, n, config.grid, config.strategy, policy); });
    stage(b, n, "records", [&] { d.records = records(target, n, max_height, config.strategy, policy); });
    if (d.records)
      stage(b, n, "ordinary estimate", [&] { d.w = estimate_ordinary(*d.records, config.record_skip); });
    if (d.table) stage(b, n, "uniform estimate", [&] { d.w_hat = estimate_uniform(*d.table, config.tail); });

    if (n <= 4) {
      const long cap = star_cap(config, n, heights);
      GridSpec sg;
      for (long h : heights)
        if (h <= cap) sg.heights.push_back(h);
      if (sg.heights.empty()) {
        b.warnings.push_back("n=" + std::to_string(n) + " star tables skipped: no grid height fits the budget");
      } else {
        if (cap < heights.back())
          b.warnings.push_back("n=" + std::to_string(n) + " star search limited to H <= " + std::to_string(cap));
        stage(b, n, "star table", [&] { d.star_table = psi_star_table(target, n, sg, policy); });
        stage(b, n, "star records", [&] { d.star_records = star_records(target, n, cap, policy); });
        if (d.star_records)
          stage(b, n, "star ordinary estimate", [&] { d.w_star = estimate_star(*d.star_records, config.record_skip); });
        if (d.star_table)
          stage(b, n, "star uniform estimate", [&] { d.w_hat_star = estimate_star(*d.star_table, config.tail); });
        if (d.star_table && config.star_mixed)
          stage(b, n, "star mixed estimate", [&] { d.w_star_mixed = estimate_star_mixed(*d.star_table); });
      }
    }

    const double k = config.bracket_constant;
    if (d.w) b.profile.set(Exponent::W, n, bracketed(*d.w, max_height, k));
    if (d.w_hat) b.profile.set(Exponent::WHat, n, bracketed(*d.w_hat, d.table->rows.back().height, k));
    if (d.w_star) {
      long top = d.star_records->entries.back().alpha.height().get_si();
      b.profile.set(Exponent::WStar, n, bracketed(*d.w_star, top, k));
    }
    if (d.w_hat_star) b.profile.set(Exponent::WHatStar, n, bracketed(*d.w_hat_star, d.star_table->rows.back().height, k));
    b.degrees.push_back(std::move(d));
  }

  b.report = consistency_check(b.profile);
  for (const auto& r : b.report.results)
    if ((r.rule == "R1" || r.rule == "R2") && r.status == RuleStatus::Violated) b.profile_flagged = true;
  if (b.profile_flagged) b.warnings.push_back("derived profile violates R1 or R2; estimator output is suspect");

  b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!config.out.empty()) write_bundle(b, config.out);
  return b;
}

void require_complete(const ResultBundle& bundle) {
  if (bundle.budget_exceeded)
    throw Error(ErrorCode::BudgetExceeded, "run exceeded the enumeration budget; partial results kept");
}

json bundle_to_json(const ResultBundle& b, bool include_timing) {
  json j;
  j["config"] = config_to_text(b.config);
  j["target"] = b.target;
  j["transcendental"] = b.transcendental;
  j["strategy"] = std::string(to_string(b.config.strategy));
  j["budget"] = b.config.budget;
  j["precision_cap"] = b.config.precision_cap;
  j["seed"] = b.config.seed;
  json degrees = json::array();
  for (const auto& d : b.degrees) {
    json dj;
    dj["n"] = d.n;
    dj["psi_table"] = d.table ? table_json(*d.table) : json(nullptr);
    dj["records"] = d.records ? records_json(*d.records) : json(nullptr);
    dj["star_table"] = d.star_table ? star_table_json(*d.star_table) : json(nullptr);
    dj["star_records"] = d.star_records ? star_records_json(*d.star_records) : json(nullptr);
    dj["estimates"] = {{"w", estimate_json(d.w)},
                       {"w_hat", estimate_json(d.w_hat)},
                       {"w_star", estimate_json(d.w_star)},
                       {"w_hat_star", estimate_json(d.w_hat_star)}};
    if (b.config.star_mixed) dj["estimates"]["w_star_mixed"] = estimate_json(d.w_star_mixed);
    degrees.push_back(dj);
  }
  j["degrees"] = degrees;
  j["profile"] = json::parse(profile_to_json(b.profile));
  j["report"] = json::parse(report_to_json(b.report));
  j["warnings"] = b.warnings;
  j["budget_exceeded"] = b.budget_exceeded;
  j["profile_flagged"] = b.profile_flagged;
  if (include_timing) j["timing"] = {{"seconds", b.seconds}};
  return j;
}

void write_bundle(const ResultBundle& b, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  json j = bundle_to_json(b);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + (fs::path(dir) / name).string());
    f << text;
  };
  put("bundle.json", j.dump(2) + "\n");
  for (const auto& d : b.degrees) {
    const std::string s = std::to_string(d.n);
    if (d.table) put("psi_n" + s + ".csv", table_export(j, "psi", d.n));
    if (d.records) put("records_n" + s + ".csv", table_export(j, "records", d.n));
    if (d.star_table) put("star_n" + s + ".csv", table_export(j, "star", d.n));
    if (d.star_records) put("star_records_n" + s + ".csv", table_export(j, "star-records", d.n));
  }
  put("bounds.csv", table_export(j, "bounds"));
}

json load_bundle(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace dioph
