#include "dioph/lab.hpp"

#include "dioph/decimal.hpp"
#include "dioph/errors.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace dioph {

using nlohmann::json;

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string str_of(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

const json* degree_entry(const json& bundle, int n) {
  for (const auto& d : bundle.at("degrees"))
    if (d.at("n").get<int>() == n) return &d;
  return nullptr;
}

const json& require_table(const json& bundle, const char* key, int n) {
  const json* d = degree_entry(bundle, n);
  if (!d || !d->contains(key) || d->at(key).is_null())
    throw Error(ErrorCode::MissingTable, std::string(key) + " for n=" + std::to_string(n) + " is not in the bundle");
  return d->at(key);
}

std::set<int> degree_set(const json& bundle) {
  std::set<int> out;
  for (const auto& d : bundle.at("degrees")) out.insert(d.at("n").get<int>());
  return out;
}

double log10_ratio(const std::string& a, const std::string& b) {
  return (log_rat(parse_rational(a)) - log_rat(parse_rational(b))) / std::log(10.0);
}

void compare_rows(DiffReport& diff, int n, const char* table, const json& ta, const json& tb, const char* hi_key,
                  const char* witness_key, bool exhaustive_only) {
  std::map<long, const json*> rows_b;
  for (const auto& r : tb.at("rows")) rows_b[r.at("H").get<long>()] = &r;
  for (const auto& ra : ta.at("rows")) {
    long h = ra.at("H").get<long>();
    auto it = rows_b.find(h);
    if (it == rows_b.end()) continue;
    const json& rb = *it->second;
    if (exhaustive_only && (ra.value("strategy", "") != "exhaustive" || rb.value("strategy", "") != "exhaustive"))
      continue;
    std::string wa = str_of(ra.at(witness_key)), wb = str_of(rb.at(witness_key));
    if (ra.contains("witness_root_index")) {
      wa += "#" + str_of(ra.at("witness_root_index"));
      wb += "#" + str_of(rb.at("witness_root_index"));
    }
    std::string ha = ra.at(hi_key).get<std::string>(), hb = rb.at(hi_key).get<std::string>();
    if (wa == wb && ha == hb) continue;
    RowDelta d;
    d.n = n;
    d.table = table;
    d.height = h;
    d.log10_ratio = log10_ratio(ha, hb);
    d.witness_differs = wa != wb;
    d.witness_a = wa;
    d.witness_b = wb;
    diff.rows.push_back(d);
  }
}

}  // namespace

DiffReport compare(const json& a, const json& b) {
  DiffReport diff;
  try {
    if (a.at("target") != b.at("target"))
      throw Error(ErrorCode::IncompatibleBundles,
                  "targets differ: " + str_of(a.at("target")) + " vs " + str_of(b.at("target")));
    if (degree_set(a) != degree_set(b)) throw Error(ErrorCode::IncompatibleBundles, "degrees differ");
    diff.comparable_settings = a.at("strategy") == b.at("strategy") && a.at("budget") == b.at("budget") &&
                               a.at("precision_cap") == b.at("precision_cap");
    for (int n : degree_set(a)) {
      const json& da = *degree_entry(a, n);
      const json& db = *degree_entry(b, n);
      if (!da.at("psi_table").is_null() && !db.at("psi_table").is_null())
        compare_rows(diff, n, "psi", da.at("psi_table"), db.at("psi_table"), "psi_hi", "witness",
                     !diff.comparable_settings);
      if (!da.at("star_table").is_null() && !db.at("star_table").is_null())
        compare_rows(diff, n, "star", da.at("star_table"), db.at("star_table"), "psi_star_hi", "witness_minpoly",
                     false);
      for (const char* name : {"w", "w_hat", "w_star", "w_hat_star", "w_star_mixed"}) {
        json ea = da.at("estimates").value(name, json(nullptr));
        json eb = db.at("estimates").value(name, json(nullptr));
        if (ea.is_null() && eb.is_null()) continue;
        double va = ea.is_null() ? NAN : ea.at("point").get<double>();
        double vb = eb.is_null() ? NAN : eb.at("point").get<double>();
        if (va == vb) continue;
        diff.estimates.push_back({n, name, va, vb});
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed bundle: ") + e.what());
  }
  for (const auto& r : diff.rows)
    if (r.witness_differs && diff.comparable_settings) diff.witnesses_differ = true;
  return diff;
}

std::string diff_to_text(const DiffReport& diff) {
  std::ostringstream os;
  for (const auto& r : diff.rows) {
    os << r.table << " n=" << r.n << " H=" << r.height << " log10 ratio " << r.log10_ratio;
    if (r.witness_differs) os << " witness " << r.witness_a << " vs " << r.witness_b;
    os << "\n";
  }
  auto value = [](double x) { return std::isnan(x) ? std::string("missing") : std::to_string(x); };
  for (const auto& e : diff.estimates)
    os << "estimate " << e.name << " n=" << e.n << ": " << value(e.a) << " vs " << value(e.b) << "\n";
  if (diff.empty()) os << "no differences\n";
  if (diff.witnesses_differ) os << "witnesses differ at equal strategy and budgets\n";
  return os.str();
}

std::string table_export(const json& bundle, const std::string& which, int n) {
  std::ostringstream os;
  try {
    if (which == "psi") {
      const json& t = require_table(bundle, "psi_table", n);
      os << "H,psi_lo,psi_hi,witness,strategy\n";
      for (const auto& r : t.at("rows"))
        os << r.at("H").get<long>() << "," << r.at("psi_lo").get<std::string>() << ","
           << r.at("psi_hi").get<std::string>() << "," << quoted(r.at("witness").get<std::string>()) << ","
           << r.at("strategy").get<std::string>() << "\n";
    } else if (which == "star") {
      if (n > 4) throw Error(ErrorCode::MissingTable, "star tables exist only for n <= 4");
      const json& t = require_table(bundle, "star_table", n);
      os << "H,psi_star_lo,psi_star_hi,witness_minpoly,witness_root_index\n";
      for (const auto& r : t.at("rows"))
        os << r.at("H").get<long>() << "," << r.at("psi_star_lo").get<std::string>() << ","
           << r.at("psi_star_hi").get<std::string>() << "," << quoted(r.at("witness_minpoly").get<std::string>())
           << "," << r.at("witness_root_index").get<int>() << "\n";
    } else if (which == "records") {
      const json& t = require_table(bundle, "records", n);
      os << "H,value_lo,value_hi,poly,certified\n";
      for (const auto& r : t.at("entries"))
        os << r.at("H").get<std::string>() << "," << r.at("value_lo").get<std::string>() << ","
           << r.at("value_hi").get<std::string>() << "," << quoted(r.at("poly").get<std::string>()) << ","
           << (r.at("certified").get<bool>() ? "true" : "false") << "\n";
    } else if (which == "star-records") {
      if (n > 4) throw Error(ErrorCode::MissingTable, "star records exist only for n <= 4");
      const json& t = require_table(bundle, "star_records", n);
      os << "H,distance_lo,distance_hi,witness_minpoly,witness_root_index\n";
      for (const auto& r : t.at("entries"))
        os << r.at("H").get<std::string>() << "," << r.at("distance_lo").get<std::string>() << ","
           << r.at("distance_hi").get<std::string>() << "," << quoted(r.at("witness_minpoly").get<std::string>())
           << "," << r.at("witness_root_index").get<int>() << "\n";
    } else if (which == "bounds") {
      os << "n,rule,quantity,value\n";
      for (int d : degree_set(bundle))
        for (const auto& c : rule_constants(d))
          os << c.n << "," << c.rule << "," << c.quantity << "," << format_real(c.value, 12) << "\n";
    } else {
      throw Error(ErrorCode::MissingTable, "unknown table '" + which + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed bundle: ") + e.what());
  }
  return os.str();
}

}  // namespace dioph
