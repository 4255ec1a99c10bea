#include "dioph/bounds.hpp"

#include "dioph/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dioph {

using nlohmann::json;

std::string to_string(Exponent e) {
  switch (e) {
    case Exponent::W: return "w";
    case Exponent::WHat: return "w_hat";
    case Exponent::WStar: return "w_star";
    case Exponent::WHatStar: return "w_hat_star";
  }
  return "?";
}

Exponent parse_exponent(const std::string& text) {
  if (text == "w") return Exponent::W;
  if (text == "w_hat") return Exponent::WHat;
  if (text == "w_star") return Exponent::WStar;
  if (text == "w_hat_star") return Exponent::WHatStar;
  throw Error(ErrorCode::ParseError, "unknown exponent: " + text);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Measured: return "measured";
    case Provenance::Hypothesized: return "hypothesized";
    case Provenance::Exact: return "exact";
  }
  return "?";
}

Provenance parse_provenance(const std::string& text) {
  if (text == "measured") return Provenance::Measured;
  if (text == "hypothesized") return Provenance::Hypothesized;
  if (text == "exact") return Provenance::Exact;
  throw Error(ErrorCode::ParseError, "unknown provenance: " + text);
}

std::string to_string(RuleStatus s) {
  switch (s) {
    case RuleStatus::Satisfied: return "satisfied";
    case RuleStatus::SatisfiedWithinUncertainty: return "satisfied-within-uncertainty";
    case RuleStatus::Violated: return "violated";
    case RuleStatus::Inapplicable: return "inapplicable";
    case RuleStatus::InsufficientData: return "insufficient-data";
  }
  return "?";
}

const ExponentValue* ExponentProfile::get(Exponent e, int n) const {
  auto it = values.find({e, n});
  return it == values.end() ? nullptr : &it->second;
}

int ExponentProfile::max_degree() const {
  int d = 0;
  for (const auto& [key, v] : values) d = std::max(d, key.second);
  return d;
}

std::optional<int> ExponentProfile::um_class() const {
  for (int m = 1; m <= max_degree(); ++m) {
    const ExponentValue* w = get(Exponent::W, m);
    if (!w || !is_inf(w->lo)) continue;
    if (m == 1) return 1;
    const ExponentValue* prev = get(Exponent::W, m - 1);
    if (prev && !is_inf(prev->hi)) return m;
    return std::nullopt;
  }
  return std::nullopt;
}

// ---- profile JSON ----

namespace {

Real parse_real_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return real_inf();
    try {
      std::size_t used = 0;
      (void)std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Real(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad number: " + s);
    }
  }
  if (j.is_number()) return Real(j.get<double>());
  throw Error(ErrorCode::ParseError, "expected number or \"inf\"");
}

json real_json(const Real& x) {
  if (is_inf(x)) return x > 0 ? "inf" : "-inf";
  return x.str(30);
}

json real_number(const Real& x) {
  if (is_inf(x)) return x > 0 ? "inf" : "-inf";
  return x.convert_to<double>();
}

}  // namespace

ExponentProfile parse_profile(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "profile must be an object");
  ExponentProfile p;
  try {
    p.transcendental = j.value("transcendental", true);
    p.extremal = j.value("extremal", false);
    for (const auto& e : j.value("entries", json::array())) {
      Exponent ex = parse_exponent(e.at("exponent").get<std::string>());
      int n = e.at("n").get<int>();
      if (n < 1) throw Error(ErrorCode::ParseError, "degree must be >= 1");
      ExponentValue v;
      if (e.contains("value")) {
        v.lo = v.hi = parse_real_json(e.at("value"));
        v.provenance = Provenance::Exact;
      } else {
        v.lo = parse_real_json(e.at("lo"));
        v.hi = parse_real_json(e.at("hi"));
        v.provenance = Provenance::Measured;
      }
      if (e.contains("provenance")) v.provenance = parse_provenance(e.at("provenance").get<std::string>());
      if (v.lo > v.hi) throw Error(ErrorCode::ParseError, "bracket with lo > hi");
      p.set(ex, n, v);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return p;
}

std::string profile_to_json(const ExponentProfile& profile) {
  json j;
  j["transcendental"] = profile.transcendental;
  j["extremal"] = profile.extremal;
  json entries = json::array();
  for (const auto& [key, v] : profile.values) {
    json e;
    e["exponent"] = to_string(key.first);
    e["n"] = key.second;
    if (v.is_point()) {
      e["value"] = real_json(v.lo);
    } else {
      e["lo"] = real_json(v.lo);
      e["hi"] = real_json(v.hi);
    }
    e["provenance"] = to_string(v.provenance);
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j.dump(2);
}

// ---- rules ----

namespace {

using Key = std::pair<Exponent, int>;
using Slack = std::function<std::optional<Real>(const std::vector<Real>&)>;

Real sub(const Real& a, const Real& b) {
  if (is_inf(a) && is_inf(b)) return Real(0);
  return a - b;
}

std::string label(Exponent e, int n) { return to_string(e) + "_" + std::to_string(n); }

struct Evaluator {
  const ExponentProfile& profile;
  std::string rule;
  int m, n;
  std::vector<RuleResult> out;

  RuleResult base(const std::string& clause) const {
    RuleResult r;
    r.rule = rule;
    r.clause = clause;
    r.m = m;
    r.n = n;
    return r;
  }

  void note(const std::string& clause, RuleStatus s, const std::string& reason) {
    RuleResult r = base(clause);
    r.status = s;
    r.reason = reason;
    out.push_back(r);
  }

  std::optional<std::string> missing(const std::vector<Key>& keys) const {
    for (const auto& k : keys)
      if (!profile.get(k.first, k.second)) return "missing " + label(k.first, k.second);
    return std::nullopt;
  }

  void classify(RuleResult& r, const Real& lo, const Real& hi, bool point) const {
    r.slack = lo;
    r.slack_best = hi;
    const Real tol(kSlackTolerance);
    if (lo >= -tol) r.status = RuleStatus::Satisfied;
    else if (point || hi < -tol) r.status = RuleStatus::Violated;
    else r.status = RuleStatus::SatisfiedWithinUncertainty;
  }

  // Slack over every corner of the brackets of `keys`.
  void check(const std::string& clause, const std::vector<Key>& keys, const Slack& slack) {
    if (auto why = missing(keys)) return note(clause, RuleStatus::InsufficientData, *why);
    std::vector<const ExponentValue*> vals;
    bool point = true;
    for (const auto& k : keys) {
      vals.push_back(profile.get(k.first, k.second));
      point = point && vals.back()->is_point();
    }
    Real lo = real_inf(), hi = -real_inf();
    const std::size_t corners = std::size_t{1} << keys.size();
    for (std::size_t mask = 0; mask < corners; ++mask) {
      std::vector<Real> x;
      for (std::size_t i = 0; i < vals.size(); ++i) x.push_back((mask >> i) & 1 ? vals[i]->hi : vals[i]->lo);
      std::optional<Real> s = slack(x);
      if (!s) return note(clause, RuleStatus::Inapplicable, "outside the domain of the inequality");
      lo = std::min(lo, *s);
      hi = std::max(hi, *s);
    }
    RuleResult r = base(clause);
    classify(r, lo, hi, point);
    out.push_back(r);
  }

  void equals(const std::string& clause, const Key& key, const Real& target) {
    if (auto why = missing({key})) return note(clause, RuleStatus::InsufficientData, *why);
    const ExponentValue& v = *profile.get(key.first, key.second);
    Real far = std::max(abs(sub(v.lo, target)), abs(sub(v.hi, target)));
    Real near = (v.lo <= target && target <= v.hi) ? Real(0) : std::min(abs(sub(v.lo, target)), abs(sub(v.hi, target)));
    RuleResult r = base(clause);
    classify(r, -far, -near, v.is_point());
    out.push_back(r);
  }
};

using W = Exponent;

void rule_r1(Evaluator& e, int n) {
  e.check("w_n >= w_hat_n", {{W::W, n}, {W::WHat, n}}, [](auto& x) { return sub(x[0], x[1]); });
  e.check("w_hat_n >= n", {{W::WHat, n}}, [n](auto& x) { return x[0] - n; });
}

void rule_r2(Evaluator& e, int n) {
  e.check("w_hat_star_n >= 1", {{W::WHatStar, n}}, [](auto& x) { return x[0] - 1; });
  e.check("w_hat_star_n <= w_hat_n", {{W::WHatStar, n}, {W::WHat, n}}, [](auto& x) { return sub(x[1], x[0]); });
  e.check("w_hat_n <= 2n-1", {{W::WHat, n}}, [n](auto& x) { return Real(2 * n - 1) - x[0]; });
}

void rule_r4(Evaluator& e, int n) {
  Real c = tomcat1(n);
  e.check("tomcat1", {{W::WHat, n}}, [c](auto& x) { return c - x[0]; });
  if (n == 3) {
    Real c2 = tomcat2();
    e.check("tomcat2", {{W::WHat, 3}}, [c2](auto& x) { return c2 - x[0]; });
  }
}

void rule_r7(Evaluator& e, int n) {
  e.check("w_star_n <= w_n", {{W::WStar, n}, {W::W, n}}, [](auto& x) { return sub(x[1], x[0]); });
  e.check("w_n <= w_star_n + n-1", {{W::W, n}, {W::WStar, n}},
          [n](auto& x) { return sub(x[1] + (n - 1), x[0]); });
  e.check("w_hat_star_n <= w_hat_n", {{W::WHatStar, n}, {W::WHat, n}}, [](auto& x) { return sub(x[1], x[0]); });
  e.check("w_hat_n <= w_hat_star_n + n-1", {{W::WHat, n}, {W::WHatStar, n}},
          [n](auto& x) { return sub(x[1] + (n - 1), x[0]); });
}

void rule_r9(Evaluator& e, int m, int n) {
  const std::string clause = "w_hat_n <= m + (n-1) w_hat_n / w_m";
  std::vector<Key> keys = {{W::WHat, n}, {W::W, m}};
  if (auto why = e.missing({{W::W, n - 1}, {W::W, m}, {W::WHat, n}}))
    return e.note(clause, RuleStatus::InsufficientData, *why);
  const ExponentValue& lower = *e.profile.get(W::W, n - 1);
  const ExponentValue& upper = *e.profile.get(W::W, m);
  if (!(lower.hi < upper.lo))
    return e.note(clause, RuleStatus::Inapplicable, "w_{n-1} < w_m is not established by disjoint values");
  e.check(clause, keys, [m, n](auto& x) -> std::optional<Real> {
    const Real& h = x[0];
    const Real& w = x[1];
    if (is_inf(h)) return -real_inf();
    if (is_inf(w)) return Real(m) - h;
    return Real(m) + (n - 1) * h / w - h;
  });
}

void rule_r11(Evaluator& e, int m, int n) {
  const std::string clause = "w_hat_star_n <= min{m + (n-1) w_hat_star_n / w_m, w_m}";
  if (auto why = e.missing({{W::WHatStar, n}, {W::W, m}})) return e.note(clause, RuleStatus::InsufficientData, *why);
  if (m < n) {
    Real threshold(n + m - 1);
    if (const ExponentValue* ws = e.profile.get(W::WStar, n)) threshold = std::min(threshold, ws->hi);
    if (!(e.profile.get(W::W, m)->lo > threshold))
      return e.note(clause, RuleStatus::Inapplicable, "neither m >= n nor w_m > min{n+m-1, w_star_n} holds");
  }
  e.check(clause, {{W::WHatStar, n}, {W::W, m}}, [m, n](auto& x) -> std::optional<Real> {
    const Real& h = x[0];
    const Real& w = x[1];
    if (is_inf(h)) return -real_inf();
    if (is_inf(w)) return Real(m) - h;
    return std::min(Real(m) + (n - 1) * h / w, w) - h;
  });
}

void rule_r12(Evaluator& e, int n) {
  e.check("w_hat_n <= (2(w_star_n + n) - 1)/3", {{W::WHat, n}, {W::WStar, n}}, [n](auto& x) {
    return sub((2 * (x[1] + n) - 1) / 3, x[0]);
  });
  const std::string clause = "fussball";
  if (auto why = e.missing({{W::WHatStar, n}, {W::WStar, n}, {W::W, n}}))
    return e.note(clause, RuleStatus::InsufficientData, *why);
  if (!(e.profile.get(W::W, n)->hi <= 2 * n - 1))
    return e.note(clause, RuleStatus::Inapplicable, "w_n <= 2n-1 is not established");
  e.check(clause, {{W::WHatStar, n}, {W::WStar, n}}, [n](auto& x) -> std::optional<Real> {
    const Real& ws = x[1];
    if (n >= 2 && !is_inf(ws) && 2 * ws * ws - n * ws - n <= 0) return std::nullopt;
    return x[0] - fussball_floor(n, ws);
  });
}

void rule_r14(Evaluator& e, int n) {
  e.check("w_star_n >= min{...}", {{W::WStar, n}, {W::WHat, n}, {W::W, n}}, [n](auto& x) {
    const Real &ws = x[0], &h = x[1], &w = x[2];
    Real a = h;
    Real b = is_inf(w) || is_inf(h) ? real_inf() : w - Real(n - 1) / 2 + (h - n) / 2;
    Real c = is_inf(w) || is_inf(h) ? real_inf() : (w + 1) / 2 + h - n;
    return sub(ws, std::min({a, b, c}));
  });
  if (n < 2) return;
  e.check("improved floor", {{W::WStar, n}, {W::WHat, n}}, [n](auto& x) -> std::optional<Real> {
    if (!is_inf(x[1]) && x[1] <= n - 1) return std::nullopt;
    return sub(x[0], improved_star_floor(n, x[1]));
  });
}

void rule_r15(Evaluator& e, int m, int n) {
  auto cls = e.profile.um_class();
  if (!cls) return e.note("U_m corollary", RuleStatus::InsufficientData, "profile does not determine a U_m class");
  if (*cls != m)
    return e.note("U_m corollary", RuleStatus::Inapplicable, "profile is a U_" + std::to_string(*cls) + " number");
  UmCorollary c = um_corollary(m, n);
  if (n == m) e.equals("w_hat_m = m", {W::WHat, m}, Real(c.what_m));
  e.check("w_hat_star_n <= m", {{W::WHatStar, n}}, [c](auto& x) { return Real(c.what_star_n) - x[0]; });
  e.check("w_hat_n <= m+n-1", {{W::WHat, n}}, [c](auto& x) { return Real(c.what_n) - x[0]; });
}

void rule_r16(Evaluator& e) {
  if (!e.profile.extremal)
    return e.note("extremal corollary", RuleStatus::InsufficientData, "profile is not flagged extremal");
  Real star = extremal_star_ceiling();
  auto [w2, h2] = extremal_pair();
  e.check("w_hat_star_3 <= 3(2+sqrt5)/(1+sqrt5)", {{W::WHatStar, 3}}, [star](auto& x) { return star - x[0]; });
  e.check("w_hat_3 <= 4", {{W::WHat, 3}}, [](auto& x) { return Real(4) - x[0]; });
  e.equals("w_2 = 2+sqrt5", {W::W, 2}, w2);
  e.equals("w_hat_2 = (3+sqrt5)/2", {W::WHat, 2}, h2);
}

}  // namespace

std::vector<std::string> rule_names() {
  std::vector<std::string> names;
  for (int i = 1; i <= 16; ++i) names.push_back("R" + std::to_string(i));
  return names;
}

std::vector<RuleResult> evaluate_rule(const std::string& rule, const ExponentProfile& profile, int m, int n) {
  Evaluator e{profile, rule, m, n, {}};
  auto out_of_range = [&](const std::string& why) {
    e.note("degree", RuleStatus::Inapplicable, why);
    return e.out;
  };
  if (!profile.transcendental) return out_of_range("profile is not transcendental");
  if (n < 1 || (m < 1 && rule != "R15" && rule != "R16")) return out_of_range("degrees must be >= 1");

  if (rule == "R1") rule_r1(e, n);
  else if (rule == "R2") rule_r2(e, n);
  else if (rule == "R3") {
    if (n != 2) return out_of_range("defined for n = 2");
    Real c = arbour_roy();
    e.check("w_hat_2 <= (3+sqrt5)/2", {{W::WHat, 2}}, [c](auto& x) { return c - x[0]; });
  } else if (rule == "R4") {
    if (n < 2) return out_of_range("needs n >= 2");
    rule_r4(e, n);
  } else if (rule == "R5") {
    if (n < 2) return out_of_range("needs n >= 2");
    e.check("w_n >= (n-1)(w_hat^2 - w_hat)/(1 + (n-2) w_hat)", {{W::W, n}, {W::WHat, n}},
            [n](auto& x) { return sub(x[0], ssmj_floor(n, x[1])); });
  } else if (rule == "R6") {
    if (n != 3) return out_of_range("defined for n = 3");
    e.check("w_3 >= w_hat_3 (sqrt(4 w_hat_3 - 3) - 1)/2", {{W::W, 3}, {W::WHat, 3}},
            [](auto& x) { return sub(x[0], beesser_floor(x[1])); });
  } else if (rule == "R7") rule_r7(e, n);
  else if (rule == "R8") {
    if (n < 2) return out_of_range("needs n >= 2");
    e.check("w_star_n >= w_hat_n/(w_hat_n - n + 1)", {{W::WStar, n}, {W::WHat, n}},
            [n](auto& x) -> std::optional<Real> {
              if (is_inf(x[1])) return sub(x[0], Real(1));
              Real d = x[1] - n + 1;
              if (d <= 0) return std::nullopt;
              return sub(x[0], x[1] / d);
            });
  } else if (rule == "R9") {
    if (!(m >= n && n >= 2)) return out_of_range("needs m >= n >= 2");
    rule_r9(e, m, n);
  } else if (rule == "R10") {
    e.check("min{w_m, w_hat_n} <= m+n-1", {{W::W, m}, {W::WHat, n}},
            [m, n](auto& x) { return Real(m + n - 1) - std::min(x[0], x[1]); });
  } else if (rule == "R11") rule_r11(e, m, n);
  else if (rule == "R12") rule_r12(e, n);
  else if (rule == "R13") {
    if (n < 3) return out_of_range("needs n >= 3");
    Real c = bertis(n);
    e.check("w_star_n >= (n + sqrt(n^2+16n-8))/4", {{W::WStar, n}}, [c](auto& x) { return sub(x[0], c); });
  } else if (rule == "R14") rule_r14(e, n);
  else if (rule == "R15") rule_r15(e, m, n);
  else if (rule == "R16") rule_r16(e);
  else throw Error(ErrorCode::InvalidArgument, "unknown rule: " + rule);
  return e.out;
}

BoundReport consistency_check(const ExponentProfile& profile) {
  BoundReport report;
  const int top = std::max(3, profile.max_degree());
  auto add = [&](std::vector<RuleResult> rows) {
    for (auto& r : rows) report.results.push_back(std::move(r));
  };
  for (const std::string& rule : rule_names()) {
    if (rule == "R16") {
      add(evaluate_rule(rule, profile, 3, 3));
    } else if (rule == "R15") {
      int m = profile.um_class().value_or(1);
      if (!profile.um_class() || !profile.transcendental) {
        add(evaluate_rule(rule, profile, m, m));
      } else {
        for (int n = 1; n <= top; ++n) add(evaluate_rule(rule, profile, m, n));
      }
    } else if (rule == "R9" || rule == "R10" || rule == "R11") {
      for (int n = 1; n <= top; ++n)
        for (int m = 1; m <= top; ++m) {
          if (rule == "R9" && !(m >= n && n >= 2)) continue;
          add(evaluate_rule(rule, profile, m, n));
        }
    } else {
      for (int n = 1; n <= top; ++n) {
        if ((rule == "R4" || rule == "R5" || rule == "R8") && n < 2) continue;
        if (rule == "R3" && n != 2) continue;
        if (rule == "R6" && n != 3) continue;
        if (rule == "R13" && n < 3) continue;
        add(evaluate_rule(rule, profile, n, n));
      }
    }
  }
  for (const auto& r : report.results) {
    switch (r.status) {
      case RuleStatus::Satisfied: ++report.satisfied; break;
      case RuleStatus::SatisfiedWithinUncertainty: ++report.uncertain; break;
      case RuleStatus::Violated: ++report.violated; break;
      case RuleStatus::Inapplicable: ++report.inapplicable; break;
      case RuleStatus::InsufficientData: ++report.insufficient; break;
    }
  }
  return report;
}

std::string report_to_json(const BoundReport& report) {
  json j;
  json rows = json::array();
  for (const auto& r : report.results) {
    json row;
    row["rule"] = r.rule;
    row["clause"] = r.clause;
    row["m"] = r.m;
    row["n"] = r.n;
    row["status"] = to_string(r.status);
    if (r.status == RuleStatus::Satisfied || r.status == RuleStatus::SatisfiedWithinUncertainty ||
        r.status == RuleStatus::Violated) {
      row["slack"] = real_number(r.slack);
      row["slack_best"] = real_number(r.slack_best);
    }
    if (!r.reason.empty()) row["reason"] = r.reason;
    rows.push_back(row);
  }
  j["results"] = rows;
  j["summary"] = {{"satisfied", report.satisfied},
                  {"satisfied_within_uncertainty", report.uncertain},
                  {"violated", report.violated},
                  {"inapplicable", report.inapplicable},
                  {"insufficient_data", report.insufficient}};
  j["verdict"] = report.consistent() ? "consistent" : "violated";
  return j.dump(2);
}

std::string report_summary(const BoundReport& report) {
  std::ostringstream os;
  for (const auto& r : report.results) {
    if (r.status == RuleStatus::InsufficientData || r.status == RuleStatus::Inapplicable) continue;
    os << r.rule << " (m=" << r.m << ", n=" << r.n << ") " << r.clause << ": " << to_string(r.status)
       << ", slack " << format_real(r.slack, 6) << "\n";
  }
  os << "satisfied " << report.satisfied << ", within uncertainty " << report.uncertain << ", violated "
     << report.violated << ", inapplicable " << report.inapplicable << ", insufficient data "
     << report.insufficient << "\n";
  os << "verdict: " << (report.consistent() ? "consistent" : "violated") << "\n";
  return os.str();
}

std::vector<ConstantRow> rule_constants(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  std::vector<ConstantRow> rows;
  Real r(n);
  auto add = [&](const char* rule, const char* q, const Real& v) { rows.push_back({n, rule, q, v}); };
  add("R1", "w_hat_floor", r);
  add("R2", "w_hat_ceiling", Real(2 * n - 1));
  if (n == 2) add("R3", "w_hat_ceiling", arbour_roy());
  if (n >= 2) {
    add("R4", "tomcat1", tomcat1(n));
    if (n == 3) add("R4", "tomcat2", tomcat2());
    add("R4", "crossing_point", crossing_point(n));
    add("R5", "w_floor_at_w_hat=n", ssmj_floor(n, r));
  }
  if (n == 3) add("R6", "w_floor_at_w_hat=3", beesser_floor(Real(3)));
  add("R7", "gap", Real(n - 1));
  if (n >= 2) {
    add("R8", "w_star_floor_at_w_hat=tomcat1", tomcat1(n) / (tomcat1(n) - n + 1));
    add("R9", "w_hat_ceiling_at_crossing", borne1(n, crossing_point(n)));
  }
  add("R10", "ceiling_m=n", Real(2 * n - 1));
  add("R11", "w_hat_star_ceiling_m=n_w=inf", r);
  add("R12", "w_hat_ceiling_at_w_star=n", (4 * r - 1) / 3);
  add("R12", "fussball_floor_at_w_star=n", fussball_floor(n, r));
  if (n >= 3) add("R13", "w_star_floor", bertis(n));
  add("R14", "w_star_floor_at_w=w_hat=n", (r + 1) / 2);
  if (n >= 2) add("R14", "improved_w_star_floor", improved_star_floor_min(n));
  return rows;
}

std::string constants_csv(int n_lo, int n_hi, int digits) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorCode::InvalidArgument, "bad degree range");
  std::ostringstream os;
  os << "n,rule,quantity,value\n";
  for (int n = n_lo; n <= n_hi; ++n)
    for (const auto& c : rule_constants(n)) os << c.n << "," << c.rule << "," << c.quantity << "," << format_real(c.value, digits) << "\n";
  return os.str();
}

}  // namespace dioph
