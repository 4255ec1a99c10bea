#include "dioph/resultants.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace dioph {

std::string to_string(LemmaBranch b) { return b == LemmaBranch::P ? "P" : "Q"; }

IntMatrix sylvester(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "sylvester of the zero polynomial");
  const int s = p.degree(), t = q.degree();
  if (s < 1 || t < 1) throw Error(ErrorCode::DegreeZero, "sylvester needs degrees >= 1");
  const int n = s + t;
  IntMatrix m(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n), Int(0)));
  for (int r = 0; r < t; ++r)
    for (int j = 0; j <= s; ++j) m[r][r + j] = p.coeff(s - j);
  for (int r = 0; r < s; ++r)
    for (int j = 0; j <= t; ++j) m[t + r][r + j] = q.coeff(t - j);
  return m;
}

Int determinant(IntMatrix m) {
  const size_t n = m.size();
  if (n == 0) return Int(1);
  Int prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return Int(0);
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Int v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Int resultant(const IntPolynomial& p, const IntPolynomial& q) { return determinant(sylvester(p, q)); }

namespace {

Rat factorial(int n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f);
}

Rat power(const Rat& base, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

Enclosure abs_value(const IntPolynomial& p, const RealTarget& target, long precision) {
  if (auto v = target.rational_value()) {
    Rat a = ::abs(p.eval(*v));
    if (a == 0) throw Error(ErrorCode::ZeroValue, p.to_string() + " vanishes at " + target.label());
    return Enclosure(a);
  }
  ZeroStatus z = vanishes_exactly(p, target);
  if (z != ZeroStatus::Nonzero)
    throw Error(ErrorCode::ZeroValue, p.to_string() + " may vanish at " + target.label());
  for (long prec = precision;; prec *= 2) {
    Enclosure e = evaluate(p, target, prec);
    if (!e.contains_zero()) return e.abs();
  }
}

}  // namespace

LemmaCertificate lemma_check(const IntPolynomial& p, const IntPolynomial& q, const RealTarget& target,
                             long precision) {
  LemmaCertificate c;
  c.p = p;
  c.q = q;
  c.resultant = resultant(p, q);
  if (c.resultant == 0) throw Error(ErrorCode::NotCoprime, p.to_string() + " and " + q.to_string() + " share a root");
  c.s = p.degree();
  c.t = q.degree();

  Rat xi_mag;
  if (auto v = target.rational_value()) {
    if (*v == 0) throw Error(ErrorCode::ZeroXi, "xi = 0");
    xi_mag = ::abs(*v);
  } else {
    xi_mag = target.eval(precision).mag();
  }
  c.value_p = abs_value(p, target, precision);
  c.value_q = abs_value(q, target, precision);

  const Rat hp(p.height()), hq(q.height());
  c.constant = factorial(c.s + c.t) * power(std::max(Rat(1), xi_mag), std::max(c.s, c.t) - 1);
  c.term_p = (power(hp, c.t - 1) * power(hq, c.s)) * c.value_p;
  c.term_q = (power(hp, c.t) * power(hq, c.s - 1)) * c.value_q;
  c.verdict = c.term_p.hi() >= c.term_q.hi() ? LemmaBranch::P : LemmaBranch::Q;

  const Rat res_abs(::abs(c.resultant));
  const Rat rhs = c.constant * std::max(c.term_p.hi(), c.term_q.hi());
  c.bound_holds = res_abs >= 1 && res_abs <= rhs;
  c.slack_ratio = rhs / res_abs;

  Rat floor = 1 / (power(hp, c.t - 1) * power(hq, c.s - 1) * std::max(hp, hq));
  c.corollary_holds = c.constant * std::max(c.value_p.hi(), c.value_q.hi()) >= floor;
  return c;
}

namespace {

struct Trial {
  LemmaCertificate cert;
  std::uint64_t resampled = 0;
  std::string failure;
};

Trial run_trial(const FuzzConfig& cfg, std::uint64_t index) {
  Trial out;
  std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(index + 1)));
  std::uniform_int_distribution<int> deg(1, cfg.degree);
  std::uniform_int_distribution<long> coef(-cfg.height, cfg.height);
  std::uniform_int_distribution<long> grid(0, cfg.denominator);

  auto draw = [&](int d) {
    std::vector<Int> c(static_cast<size_t>(d) + 1);
    for (auto& x : c) x = coef(rng);
    while (c.back() == 0) c.back() = coef(rng);
    return IntPolynomial(std::move(c));
  };

  for (;;) {
    IntPolynomial p = draw(deg(rng)), q = draw(deg(rng));
    Rat xi = cfg.xi_lo + (cfg.xi_hi - cfg.xi_lo) * Rat(grid(rng), cfg.denominator);
    xi.canonicalize();
    if (xi == 0 || p.eval(xi) == 0 || q.eval(xi) == 0 || resultant(p, q) == 0) {
      ++out.resampled;
      if (out.resampled > 100000) {
        out.failure = "trial " + std::to_string(index) + ": could not sample a coprime nonvanishing pair";
        return out;
      }
      continue;
    }
    out.cert = lemma_check(p, q, RealTarget::rational(xi));
    if (!out.cert.bound_holds)
      out.failure = "trial " + std::to_string(index) + ": bound fails for " + p.to_string() + ", " +
                    q.to_string() + " at " + xi.get_str();
    return out;
  }
}

}  // namespace

FuzzReport lemma_fuzz(const FuzzConfig& cfg) {
  if (cfg.degree < 1 || cfg.height < 1 || cfg.denominator < 1)
    throw Error(ErrorCode::InvalidArgument, "lemma_fuzz bounds must be >= 1");
  if (cfg.xi_lo > cfg.xi_hi) throw Error(ErrorCode::InvalidArgument, "empty xi range");
  if (cfg.xi_lo == 0 && cfg.xi_hi == 0) throw Error(ErrorCode::ZeroXi, "xi range is {0}");

  std::vector<Trial> trials(cfg.trials);
  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(cfg.trials, 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::uint64_t i = w; i < cfg.trials; i += workers) trials[i] = run_trial(cfg, i);
    });
  for (auto& th : pool) th.join();

  FuzzReport report;
  report.trials = cfg.trials;
  bool first = true;
  for (auto& tr : trials) {
    report.resampled += tr.resampled;
    if (!tr.failure.empty()) report.failures.push_back(tr.failure);
    if (tr.cert.resultant == 0) continue;
    if (tr.cert.bound_holds) ++report.valid;
    if (tr.cert.corollary_holds) ++report.corollary_valid;
    (tr.cert.verdict == LemmaBranch::P ? report.branch_p : report.branch_q)++;
    if (first || tr.cert.slack_ratio < report.worst_slack) report.worst_slack = tr.cert.slack_ratio;
    first = false;
    report.certificates.push_back(std::move(tr.cert));
  }
  return report;
}

}  // namespace dioph
