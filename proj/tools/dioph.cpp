#include "dioph/algapprox.hpp"
#include "dioph/bounds.hpp"
#include "dioph/decimal.hpp"
#include "dioph/errors.hpp"
#include "dioph/lab.hpp"
#include "dioph/polysearch.hpp"
#include "dioph/realnum.hpp"
#include "dioph/resultants.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dioph;

namespace {

constexpr int kExitViolated = 2;
constexpr int kExitBudget = 3;

struct Globals {
  std::uint64_t seed = 0;
  long precision_cap = kDefaultPrecisionCap;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string out;
  unsigned workers = 0;
};

struct GridArgs {
  long h0 = 5;
  double ratio = 1.5;
  int points = 6;
  std::vector<long> heights;

  void add(CLI::App* cmd) {
    cmd->add_option("--h0", h0, "first grid height");
    cmd->add_option("--ratio", ratio, "grid ratio");
    cmd->add_option("--points", points, "grid points");
    cmd->add_option("--heights", heights, "explicit heights (overrides the geometric grid)")->delimiter(',');
  }
  GridSpec spec() const { return GridSpec{h0, ratio, points, heights}; }
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + g.out);
  f << text;
}

SearchPolicy policy_of(const Globals& g) {
  SearchPolicy p;
  p.precision_cap = g.precision_cap;
  p.budget = g.budget;
  p.workers = g.workers;
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad degree range '" + text + "'");
  }
}

std::string fmt_estimate(const std::optional<ExponentEstimate>& e) {
  if (!e) return "n/a";
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << e->point << " [" << e->lower << ", " << e->upper << "] (" << e->samples << " samples)";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diophantine approximation exponents: search, estimates, and bound checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized commands and bare 'digits' targets");
  app.add_option("--precision-cap", g.precision_cap, "largest working precision in bits");
  app.add_option("--budget", g.budget, "largest number of enumerated polynomials");
  app.add_option("--out", g.out, "output file (directory for estimate)");
  app.add_option("--workers", g.workers, "worker threads (0: all cores)");

  // estimate
  auto* est = app.add_subcommand("estimate", "run a full experiment and report exponent estimates");
  std::string est_config, est_target = "extremal:1,2", est_strategy = "exhaustive";
  std::vector<int> est_degrees = {2};
  long est_max_height = 0, est_limit = 0;
  GridArgs est_grid;
  est->add_option("--config", est_config, "experiment config file (flags below are ignored)");
  est->add_option("--target", est_target, "target specification");
  est->add_option("--n", est_degrees, "degrees")->delimiter(',');
  est->add_option("--strategy", est_strategy, "exhaustive or hybrid");
  est->add_option("--max-height", est_max_height, "record search height (default: last grid height)");
  est->add_option("--exhaustive-limit", est_limit, "hybrid: exhaustive search up to this height");
  est_grid.add(est);

  // psi
  auto* psi_cmd = app.add_subcommand("psi", "table of psi_n(H) with witnesses as CSV");
  std::string psi_target, psi_strategy = "exhaustive";
  int psi_n = 1;
  GridArgs psi_grid;
  psi_cmd->add_option("--target", psi_target, "target specification")->required();
  psi_cmd->add_option("--n", psi_n, "degree");
  psi_cmd->add_option("--strategy", psi_strategy, "exhaustive or hybrid");
  psi_grid.add(psi_cmd);

  // star
  auto* star_cmd = app.add_subcommand("star", "table of psi*_n(H) with algebraic witnesses as CSV");
  std::string star_target;
  int star_n = 1;
  GridArgs star_grid;
  star_cmd->add_option("--target", star_target, "target specification")->required();
  star_cmd->add_option("--n", star_n, "degree (at most 4)");
  star_grid.add(star_cmd);

  // records
  auto* rec_cmd = app.add_subcommand("records", "best-approximation records as CSV");
  std::string rec_target, rec_strategy = "exhaustive";
  int rec_n = 1;
  long rec_height = 100;
  bool rec_star = false;
  rec_cmd->add_option("--target", rec_target, "target specification")->required();
  rec_cmd->add_option("--n", rec_n, "degree");
  rec_cmd->add_option("--max-height", rec_height, "largest height");
  rec_cmd->add_option("--strategy", rec_strategy, "exhaustive or hybrid");
  rec_cmd->add_flag("--star", rec_star, "algebraic-approximant records instead");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "rule constants per degree");
  std::string bnd_range = "2..10", bnd_format = "csv";
  int bnd_digits = 12;
  bnd->add_option("--n", bnd_range, "degree or range a..b");
  bnd->add_option("--format", bnd_format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
  bnd->add_option("--digits", bnd_digits, "fraction digits");

  // verify
  auto* ver = app.add_subcommand("verify", "check an exponent profile against every rule");
  std::string ver_profile;
  ver->add_option("--profile", ver_profile, "profile JSON")->required();

  // resultant-check
  auto* res = app.add_subcommand("resultant-check", "certify the resultant lemma on random pairs");
  FuzzConfig fz;
  std::string res_csv;
  bool res_seed_set = false;
  res->add_option("--trials", fz.trials, "number of pairs");
  res->add_option("--deg", fz.degree, "largest degree");
  res->add_option("--height", fz.height, "largest height");
  res->add_option("--csv", res_csv, "write certificates to this CSV file");

  // compare
  auto* cmp = app.add_subcommand("compare", "diff two result bundles");
  std::string cmp_a, cmp_b;
  cmp->add_option("a", cmp_a, "first bundle.json")->required();
  cmp->add_option("b", cmp_b, "second bundle.json")->required();

  // export
  auto* exp = app.add_subcommand("export", "CSV view of one table of a bundle");
  std::string exp_bundle, exp_table = "psi";
  int exp_n = 0;
  exp->add_option("--bundle", exp_bundle, "bundle.json")->required();
  exp->add_option("--table", exp_table, "psi, star, records, star-records, or bounds");
  exp->add_option("--n", exp_n, "degree");

  CLI11_PARSE(app, argc, argv);
  res_seed_set = app.get_option("--seed")->count() > 0;

  try {
    if (*est) {
      ExperimentConfig c;
      if (!est_config.empty()) {
        c = parse_config(read_file(est_config));
      } else {
        c.target = est_target;
        c.degrees = est_degrees;
        c.grid = est_grid.spec();
        c.strategy = parse_strategy(est_strategy);
        c.max_height = est_max_height;
        c.exhaustive_limit = est_limit;
        c.budget = g.budget;
        c.precision_cap = g.precision_cap;
      }
      if (app.get_option("--seed")->count()) c.seed = g.seed;
      if (!g.out.empty()) c.out = g.out;
      if (app.get_option("--workers")->count()) c.workers = g.workers;
      ResultBundle b = run(c);
      std::cout << "target " << b.target << "\n";
      for (const auto& d : b.degrees) {
        std::cout << "n=" << d.n << " w " << fmt_estimate(d.w) << "\n";
        std::cout << "n=" << d.n << " w_hat " << fmt_estimate(d.w_hat) << "\n";
        if (d.n <= 4) {
          std::cout << "n=" << d.n << " w_star " << fmt_estimate(d.w_star) << "\n";
          std::cout << "n=" << d.n << " w_hat_star " << fmt_estimate(d.w_hat_star) << "\n";
        }
      }
      for (const auto& w : b.warnings) std::cout << "warning: " << w << "\n";
      std::cout << report_summary(b.report);
      require_complete(b);
      return 0;
    }
    if (*psi_cmd) {
      ApproximationTable t =
          psi_table(parse_target(psi_target), psi_n, psi_grid.spec(), parse_strategy(psi_strategy), policy_of(g));
      ResultBundle b;
      DegreeResult d;
      d.n = psi_n;
      d.table = t;
      b.degrees.push_back(d);
      emit(g, table_export(bundle_to_json(b), "psi", psi_n));
      for (const auto& w : t.warnings) std::cerr << "warning: " << w << "\n";
      return 0;
    }
    if (*star_cmd) {
      StarTable t = psi_star_table(parse_target(star_target), star_n, star_grid.spec(), policy_of(g));
      ResultBundle b;
      DegreeResult d;
      d.n = star_n;
      d.star_table = t;
      b.degrees.push_back(d);
      emit(g, table_export(bundle_to_json(b), "star", star_n));
      for (const auto& w : t.warnings) std::cerr << "warning: " << w << "\n";
      return 0;
    }
    if (*rec_cmd) {
      RealTarget target = parse_target(rec_target);
      ResultBundle b;
      DegreeResult d;
      d.n = rec_n;
      if (rec_star) d.star_records = star_records(target, rec_n, rec_height, policy_of(g));
      else d.records = records(target, rec_n, rec_height, parse_strategy(rec_strategy), policy_of(g));
      b.degrees.push_back(d);
      emit(g, table_export(bundle_to_json(b), rec_star ? "star-records" : "records", rec_n));
      return 0;
    }
    if (*bnd) {
      auto [lo, hi] = parse_range(bnd_range);
      if (bnd_format == "csv") {
        emit(g, constants_csv(lo, hi, bnd_digits));
      } else {
        std::ostringstream os;
        for (int n = lo; n <= hi; ++n)
          for (const auto& c : rule_constants(n))
            os << "n=" << c.n << "  " << c.rule << "  " << c.quantity << "  " << format_real(c.value, bnd_digits)
               << "\n";
        emit(g, os.str());
      }
      return 0;
    }
    if (*ver) {
      BoundReport r = consistency_check(parse_profile(read_file(ver_profile)));
      emit(g, report_to_json(r) + "\n");
      std::cerr << report_summary(r);
      return r.consistent() ? 0 : kExitViolated;
    }
    if (*res) {
      if (res_seed_set) fz.seed = g.seed;
      fz.workers = g.workers;
      FuzzReport r = lemma_fuzz(fz);
      std::cout << "trials " << r.trials << " valid " << r.valid << " corollary " << r.corollary_valid
                << " branch_p " << r.branch_p << " branch_q " << r.branch_q << " resampled " << r.resampled
                << " worst_slack " << format_decimal(r.worst_slack, 6, Rounding::Down) << "\n";
      for (const auto& f : r.failures) std::cerr << "failure: " << f << "\n";
      if (!res_csv.empty()) {
        std::ofstream f(res_csv, std::ios::binary);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + res_csv);
        f << "p,q,s,t,resultant,constant,term_p_hi,term_q_hi,verdict,bound_holds,slack_ratio\n";
        for (const auto& c : r.certificates)
          f << "\"" << c.p.to_string() << "\",\"" << c.q.to_string() << "\"," << c.s << "," << c.t << ","
            << c.resultant.get_str() << "," << format_decimal(c.constant, 17, Rounding::Up) << ","
            << format_decimal(c.term_p.hi(), 17, Rounding::Up) << "," << format_decimal(c.term_q.hi(), 17, Rounding::Up)
            << "," << (c.verdict == LemmaBranch::P ? "P" : "Q") << "," << (c.bound_holds ? "true" : "false") << ","
            << format_decimal(c.slack_ratio, 17, Rounding::Down) << "\n";
      }
      return r.valid == r.trials ? 0 : 1;
    }
    if (*cmp) {
      DiffReport d = compare(load_bundle(cmp_a), load_bundle(cmp_b));
      emit(g, diff_to_text(d));
      return d.witnesses_differ ? 1 : 0;
    }
    if (*exp) {
      emit(g, table_export(load_bundle(exp_bundle), exp_table, exp_n));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::OverflowGuard) return kExitBudget;
    return 1;
  }
  return 0;
}
