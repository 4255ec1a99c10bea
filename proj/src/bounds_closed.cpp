#include "dioph/bounds.hpp"

#include "dioph/errors.hpp"

#include <limits>
#include <sstream>

namespace dioph {

Real real_inf() { return std::numeric_limits<Real>::infinity(); }

bool is_inf(const Real& x) { return boost::multiprecision::isinf(x); }

std::string format_real(const Real& x, int digits) {
  if (is_inf(x)) return x > 0 ? "inf" : "-inf";
  std::string s = x.str(digits, std::ios_base::fixed);
  if (s.find_first_not_of("-0.") == std::string::npos && !s.empty() && s[0] == '-') s.erase(0, 1);
  return s;
}

namespace {

void need(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

Real sqrt5() { return sqrt(Real(5)); }

}  // namespace

Real tomcat1(int n) {
  need(n >= 2, "tomcat1 needs n >= 2");
  Real r(n);
  return r - Real(1) / 2 + sqrt(r * r - 2 * r + Real(5) / 4);
}

Real tomcat2() { return 3 + sqrt(Real(2)); }

Real arbour_roy() { return (3 + sqrt5()) / 2; }

Real extremal_star_ceiling() { return 3 * (2 + sqrt5()) / (1 + sqrt5()); }

std::pair<Real, Real> extremal_pair() { return {2 + sqrt5(), arbour_roy()}; }

Real bertis(int n) {
  need(n >= 1, "bertis needs n >= 1");
  Real r(n);
  return (r + sqrt(r * r + 16 * r - 8)) / 4;
}

Real borne1(int n, const Real& w) {
  need(n >= 1, "borne1 needs n >= 1");
  if (is_inf(w)) return Real(n);
  Real d = w - n + 1;
  need(d > 0, "borne1 needs w > n - 1");
  return n * w / d;
}

Real borne2(int n, const Real& w) {
  need(n >= 2, "borne2 needs n >= 2");
  if (is_inf(w)) return real_inf();
  Real k = Real(n - 2) / (n - 1);
  Real a = k * w + 1;
  return a / 2 + sqrt(a * a / 4 + w / (n - 1));
}

Real crossing_point(int n) {
  need(n >= 2, "crossing_point needs n >= 2");
  Real r(n);
  return ((1 + 2 * r * sqrt(r * r - 2 * r + Real(5) / 4)) / (r - 1) + 2 * r - 1) / 2;
}

Real ssmj_floor(int n, const Real& h) {
  need(n >= 2, "ssmj_floor needs n >= 2");
  if (is_inf(h)) return real_inf();
  return (n - 1) * (h * h - h) / (1 + (n - 2) * h);
}

Real beesser_floor(const Real& h) {
  if (is_inf(h)) return real_inf();
  return h * (sqrt(4 * h - 3) - 1) / 2;
}

Real fussball_floor(int n, const Real& ws) {
  need(n >= 1, "fussball_floor needs n >= 1");
  if (is_inf(ws)) return Real(1);
  if (n == 1) return Real(1);
  Real den = 2 * ws * ws - n * ws - n;
  need(den > 0, "fussball_floor outside its domain");
  return (2 * ws * ws - ws - 2 * n + 1) / den;
}

std::vector<std::string> closed_form_names() {
  return {"tomcat1", "tomcat2",  "arbour-roy", "cor2-star", "cor2-hat",         "gliech-w",
          "gliech-what", "bertis", "crossing", "dirichlet", "davenport-schmidt"};
}

Real closed_form(const std::string& name, int n) {
  if (name == "tomcat1") return tomcat1(n);
  if (name == "tomcat2") return tomcat2();
  if (name == "arbour-roy") return arbour_roy();
  if (name == "cor2-star") return extremal_star_ceiling();
  if (name == "cor2-hat") return Real(4);
  if (name == "gliech-w") return extremal_pair().first;
  if (name == "gliech-what") return extremal_pair().second;
  if (name == "bertis") return bertis(n);
  if (name == "crossing") return crossing_point(n);
  if (name == "dirichlet") {
    need(n >= 1, "dirichlet needs n >= 1");
    return Real(n);
  }
  if (name == "davenport-schmidt") {
    need(n >= 1, "davenport-schmidt needs n >= 1");
    return Real(2 * n - 1);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown closed form: " + name);
}

UmCorollary um_corollary(int m, int n) {
  need(m >= 1 && n >= 1, "um_corollary needs m, n >= 1");
  return {m, m, static_cast<long>(m) + n - 1};
}

Real improved_star_floor(int n, const Real& what) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "needs n >= 2");
  if (is_inf(what)) return real_inf();
  if (what <= n - 1) throw Error(ErrorCode::InvalidArgument, "needs w_hat > n - 1");
  Real third = ssmj_floor(n, what) / 2 + what - n + Real(1) / 2;
  return std::max(what / (what - n + 1), std::min(what, third));
}

// One decreasing and one increasing term, so the max is unimodal.
Real improved_star_floor_min(int n) {
  Real lo(n), hi(2 * n - 1);
  for (int i = 0; i < 300; ++i) {
    Real a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    if (improved_star_floor(n, a) <= improved_star_floor(n, b)) hi = b;
    else lo = a;
  }
  return improved_star_floor(n, (lo + hi) / 2);
}

}  // namespace dioph
