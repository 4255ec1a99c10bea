#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dioph {

/// 50 decimal digits; +inf is representable.
using Real = boost::multiprecision::cpp_bin_float_50;

Real real_inf();
bool is_inf(const Real& x);
/// Fixed-point decimal with `digits` fraction digits, or "inf".
std::string format_real(const Real& x, int digits = 12);

// Closed forms.

/// n - 1/2 + sqrt(n^2 - 2n + 5/4), n >= 2.
Real tomcat1(int n);
/// 3 + sqrt 2.
Real tomcat2();
/// (3 + sqrt 5) / 2.
Real arbour_roy();
/// 3(2 + sqrt 5)/(1 + sqrt 5).
Real extremal_star_ceiling();
/// (w_2, w_hat_2) of an extremal number: (2 + sqrt 5, (3 + sqrt 5)/2).
std::pair<Real, Real> extremal_pair();
/// (n + sqrt(n^2 + 16n - 8)) / 4.
Real bertis(int n);
/// n w / (w - n + 1); limit n at w = inf.
Real borne1(int n, const Real& w);
/// The what-ceiling obtained by solving the ssmj inequality, n >= 2.
Real borne2(int n, const Real& w);
/// w at which borne1 and borne2 agree, n >= 2.
Real crossing_point(int n);
/// (n-1)(h^2 - h)/(1 + (n-2)h).
Real ssmj_floor(int n, const Real& what);
/// h (sqrt(4h - 3) - 1)/2.
Real beesser_floor(const Real& what);
/// max{h/(h-n+1), min{h, ssmj_floor(n, h)/2 + h - n + 1/2}}, the w*_n floor
/// sharpened with the ssmj inequality; n >= 2, h > n - 1.
Real improved_star_floor(int n, const Real& what);
/// Smallest improved_star_floor over n <= w_hat <= 2n-1 (numerical).
Real improved_star_floor_min(int n);
/// (2 ws^2 - ws - 2n + 1)/(2 ws^2 - n ws - n); limit 1 at ws = inf.
Real fussball_floor(int n, const Real& wstar);

/// Named closed forms: tomcat1, tomcat2, arbour-roy, cor2-star, cor2-hat,
/// gliech-w, gliech-what, bertis, crossing, dirichlet (= n), davenport-schmidt (= 2n-1).
Real closed_form(const std::string& name, int n = 0);
std::vector<std::string> closed_form_names();

struct UmCorollary {
  long what_m;      // value of w_hat_m
  long what_star_n; // ceiling for w_hat*_n
  long what_n;      // ceiling for w_hat_n
};
UmCorollary um_corollary(int m, int n);

// Profiles.

enum class Exponent { W, WHat, WStar, WHatStar };
std::string to_string(Exponent e);
Exponent parse_exponent(const std::string& text);

enum class Provenance { Measured, Hypothesized, Exact };
std::string to_string(Provenance p);
Provenance parse_provenance(const std::string& text);

/// A value in [lo, hi]; lo == hi for point values. Either end may be +inf.
struct ExponentValue {
  Real lo = 0;
  Real hi = 0;
  Provenance provenance = Provenance::Exact;

  static ExponentValue exact(const Real& v) { return {v, v, Provenance::Exact}; }
  static ExponentValue bracket(const Real& lo, const Real& hi, Provenance p = Provenance::Measured) {
    return {lo, hi, p};
  }
  bool is_point() const { return lo == hi; }
};

struct ExponentProfile {
  std::map<std::pair<Exponent, int>, ExponentValue> values;
  bool transcendental = true;
  bool extremal = false;

  void set(Exponent e, int n, const ExponentValue& v) { values[{e, n}] = v; }
  const ExponentValue* get(Exponent e, int n) const;
  int max_degree() const;
  /// Smallest m with w_m = +inf exactly and w_{m-1} finite (m = 1 needs no
  /// predecessor); nullopt when the profile does not pin a U_m class.
  std::optional<int> um_class() const;
};

/// JSON: {"transcendental":bool, "extremal":bool, "entries":[{"exponent":"w"|"w_hat"|
/// "w_star"|"w_hat_star", "n":int, "value":x} or {..., "lo":x, "hi":x}, "provenance":...]}
/// where x is a number, a decimal string, or "inf".
ExponentProfile parse_profile(const std::string& json_text);
std::string profile_to_json(const ExponentProfile& profile);

// Rules.

enum class RuleStatus { Satisfied, SatisfiedWithinUncertainty, Violated, Inapplicable, InsufficientData };
std::string to_string(RuleStatus s);

struct RuleResult {
  std::string rule;    // "R1".."R16"
  std::string clause;  // which inequality of the rule
  int m = 0;
  int n = 0;
  RuleStatus status = RuleStatus::InsufficientData;
  Real slack = 0;      // worst case over the brackets; >= 0 means satisfied
  Real slack_best = 0; // best case over the brackets
  std::string reason;
};

/// Tolerance on slack below which a point evaluation still counts as satisfied.
inline constexpr double kSlackTolerance = 1e-6;

/// Every check of `rule` ("R1".."R16") at degrees (m, n); rules that read
/// one degree ignore m.
std::vector<RuleResult> evaluate_rule(const std::string& rule, const ExponentProfile& profile, int m, int n);

std::vector<std::string> rule_names();

struct BoundReport {
  std::vector<RuleResult> results;
  std::size_t satisfied = 0, uncertain = 0, violated = 0, inapplicable = 0, insufficient = 0;
  bool consistent() const { return violated == 0; }
};

/// All rules at every degree pair 1 <= m, n <= max(3, profile degree), in rule order.
BoundReport consistency_check(const ExponentProfile& profile);

std::string report_to_json(const BoundReport& report);
std::string report_summary(const BoundReport& report);

struct ConstantRow {
  int n;
  std::string rule;
  std::string quantity;
  Real value;
};
/// Rule constants R1-R14 for one degree (rules that do not apply at n are omitted).
std::vector<ConstantRow> rule_constants(int n);
/// "n,rule,quantity,value" then one line per constant.
std::string constants_csv(int n_lo, int n_hi, int digits = 12);

}  // namespace dioph
