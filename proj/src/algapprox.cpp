#include "dioph/algapprox.hpp"

#include "dioph/errors.hpp"
#include "dioph/fastpoly.hpp"
#include "dioph/roots.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

namespace dioph {

std::string AlgebraicNumber::to_string() const { return minpoly.to_string() + "#" + std::to_string(root_index); }

bool identity_less(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  Int ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  if (a.minpoly != b.minpoly) return lex_less(a.minpoly, b.minpoly);
  return a.root_index < b.root_index;
}

Enclosure star_distance(const AlgebraicNumber& alpha, const RealTarget& target, long precision) {
  if (auto v = target.rational_value(); v && alpha.degree() == 1) {
    Rat a(-alpha.minpoly.coeff(0), alpha.minpoly.coeff(1));
    a.canonicalize();
    if (a == *v) throw Error(ErrorCode::ZeroValue, "alpha equals xi");
    return Enclosure(Rat(::abs(*v - a)));
  }
  Enclosure a = refine_root(alpha.minpoly, alpha.isolating, precision);
  Enclosure x = target.eval(precision);
  return (x - a).abs();
}

namespace {

constexpr double kMargin = 1e-9;

// Index of xi among the roots of p, or -1 when p is not xi's minimal polynomial.
int excluded_index(const IntPolynomial& p, const std::vector<Enclosure>& roots, const RealTarget& target) {
  auto mp = target.minimal_polynomial();
  if (!mp || *mp != p) return -1;
  if (roots.size() == 1) return 0;
  for (long prec = 64;; prec *= 2) {
    Enclosure x = target.eval(prec);
    int hit = -1, hits = 0;
    for (size_t i = 0; i < roots.size(); ++i) {
      if (refine_root(p, roots[i], prec).intersects(x)) {
        hit = static_cast<int>(i);
        ++hits;
      }
    }
    if (hits == 1) return hit;
    if (prec > (1 << 16)) throw Error(ErrorCode::PrecisionExhausted, "cannot locate xi among the roots");
  }
}

struct Cand {
  AlgebraicNumber alpha;
  Enclosure dist;
  long height = 0;
};

struct Ctx {
  const RealTarget& target;
  long precision;
  long cap;
};

// Compares weight_a |xi - a| with weight_b |xi - b|, refining on overlap.
int compare_weighted(const Cand& a, long wa, const Cand& b, long wb, const Ctx& ctx, std::uint64_t* undecided) {
  Enclosure da = Rat(wa) * a.dist, db = Rat(wb) * b.dist;
  for (long prec = ctx.precision;;) {
    if (da.certainly_below(db)) return -1;
    if (db.certainly_below(da)) return 1;
    if (prec >= ctx.cap) {
      if (undecided) ++*undecided;
      return 0;
    }
    prec = std::min(prec * 2, ctx.cap);
    da = Rat(wa) * star_distance(a.alpha, ctx.target, prec);
    db = Rat(wb) * star_distance(b.alpha, ctx.target, prec);
  }
}

bool better(const Cand& a, long wa, const Cand& b, long wb, const Ctx& ctx, std::uint64_t* undecided) {
  if (a.alpha.minpoly == b.alpha.minpoly && a.alpha.root_index == b.alpha.root_index) return false;
  int c = compare_weighted(a, wa, b, wb, ctx, undecided);
  if (c != 0) return c < 0;
  return identity_less(a.alpha, b.alpha);
}

// The root of p nearest to xi, if p is a minimal polynomial with an admissible real root.
std::optional<Cand> make_candidate(const IntPolynomial& p, const Ctx& ctx, std::uint64_t* undecided) {
  if (p.degree() < 1 || p.content() != 1 || p.leading() < 0) return std::nullopt;
  if (!is_minimal_polynomial(p)) return std::nullopt;
  auto roots = real_roots(p, 53);
  if (roots.empty()) return std::nullopt;
  int skip = excluded_index(p, roots, ctx.target);
  std::optional<Cand> best;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (static_cast<int>(i) == skip) continue;
    Cand c;
    c.alpha.minpoly = p;
    c.alpha.root_index = static_cast<int>(i);
    c.alpha.isolating = roots[i];
    c.dist = star_distance(c.alpha, ctx.target, ctx.precision);
    c.height = p.height().get_si();
    if (!best || better(c, 1, *best, 1, ctx, undecided)) best = std::move(c);
  }
  return best;
}

using Coeffs = std::array<long, 5>;

IntPolynomial poly_of(const Coeffs& c, int deg) {
  std::vector<Int> v;
  for (int i = 0; i <= deg; ++i) v.emplace_back(c[static_cast<size_t>(i)]);
  return IntPolynomial(std::move(v));
}

unsigned __int128 uabs128(__int128 v) {
  return v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
}

// Runs body(c, deg, m, base, err) for every canonical choice of c_1..c_n
// (some c_i != 0, highest nonzero > 0), split across workers by chunk.
template <class Local, class Body>
void for_each_upper(int n, long height, unsigned workers, std::vector<Local>& locals, Body body) {
  const long side = 2 * height + 1;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(side);
  constexpr std::uint64_t kChunk = 1 << 10;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total / kChunk + 1));
  locals.resize(workers);
  std::atomic<std::uint64_t> next{0};
  auto work = [&](Local& local) {
    Coeffs c{};
    for (;;) {
      std::uint64_t start = next.fetch_add(kChunk);
      if (start >= total) break;
      std::uint64_t stop = std::min(total, start + kChunk);
      std::uint64_t idx = start;
      for (int i = 1; i <= n; ++i) {
        c[static_cast<size_t>(i)] = static_cast<long>(idx % static_cast<std::uint64_t>(side)) - height;
        idx /= static_cast<std::uint64_t>(side);
      }
      for (std::uint64_t k = start; k < stop; ++k) {
        if (k != start) {
          for (int i = 1; i <= n; ++i) {
            if (++c[static_cast<size_t>(i)] <= height) break;
            c[static_cast<size_t>(i)] = -height;
          }
        }
        int deg = n;
        while (deg >= 1 && c[static_cast<size_t>(deg)] == 0) --deg;
        if (deg < 1 || c[static_cast<size_t>(deg)] < 0) continue;
        body(local, c, deg);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, std::ref(locals[w]));
  work(locals[0]);
  for (auto& th : pool) th.join();
}

struct Approx {
  double d = std::numeric_limits<double>::infinity();
  Coeffs c{};
  int deg = -1;
};

bool approx_better(const Approx& a, const Approx& b) {
  if (a.d != b.d) return a.d < b.d;
  if (a.deg != b.deg) return a.deg < b.deg;
  for (int i = a.deg; i >= 0; --i)
    if (a.c[static_cast<size_t>(i)] != b.c[static_cast<size_t>(i)])
      return a.c[static_cast<size_t>(i)] < b.c[static_cast<size_t>(i)];
  return false;
}

struct Scan {
  std::vector<std::optional<Cand>> best;  // per exact height
  std::uint64_t undecided = 0;
  std::uint64_t verified = 0;
};

Scan star_scan(const RealTarget& target, int n, long height, const SearchPolicy& policy) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (n > 4) throw Error(ErrorCode::DegreeTooLarge, "star search supports n <= 4");
  if (height < 1) throw Error(ErrorCode::InvalidArgument, "height must be >= 1");
  Int count = polynomial_count(n, height);
  if (count > Int(std::to_string(policy.budget)))
    throw Error(ErrorCode::OverflowGuard, "enumeration of " + count.get_str() + " polynomials exceeds budget");

  const Ctx ctx{target, policy.precision, policy.precision_cap};
  const FixedPowers fp = fixed_powers(target, n, height);
  const int frac = fp.frac_bits;
  const __int128 one = fp.x[0];
  Enclosure xe = target.eval(64);
  const double xi = xe.midpoint().get_d();
  const double mprime = std::max(1.0, xe.mag().get_d() * (1 + 1e-12) + 1.0);
  unsigned workers = policy.workers ? policy.workers : std::max(1u, std::thread::hardware_concurrency());
  const size_t slots = static_cast<size_t>(height) + 1;

  // Pass A: nearest constant terms, first-order distance estimate.
  struct LocalA {
    std::vector<Approx> best;
  };
  std::vector<LocalA> la;
  for_each_upper(n, height, workers, la, [&](LocalA& local, const Coeffs& c, int deg) {
    if (local.best.empty()) local.best.resize(slots);
    long m = 0;
    __int128 base = 0;
    double deriv = 0, xp = 1;
    for (int i = 1; i <= deg; ++i) {
      long ci = c[static_cast<size_t>(i)];
      m = std::max(m, std::labs(ci));
      base += static_cast<__int128>(ci) * fp.x[static_cast<size_t>(i)];
      deriv += static_cast<double>(i) * static_cast<double>(ci) * xp;
      xp *= xi;
    }
    if (deriv == 0) return;
    const __int128 t = (-base) >> frac;
    for (__int128 c0 = t - 1; c0 <= t + 2; ++c0) {
      if (c0 > height || c0 < -height) continue;
      Approx a;
      a.c = c;
      a.c[0] = static_cast<long>(c0);
      a.deg = deg;
      a.d = std::ldexp(static_cast<double>(base + c0 * one), -frac) / deriv;
      a.d = std::fabs(a.d);
      long h = std::max(m, static_cast<long>(c0 < 0 ? -c0 : c0));
      auto& slot = local.best[static_cast<size_t>(h)];
      if (approx_better(a, slot)) slot = a;
    }
  });
  std::vector<Approx> approx(slots);
  for (auto& local : la)
    for (size_t h = 1; h < local.best.size(); ++h)
      if (approx_better(local.best[h], approx[h])) approx[h] = local.best[h];

  Scan out;
  out.best.assign(slots, std::nullopt);
  std::vector<double> us(slots, std::numeric_limits<double>::infinity()), ud = us;
  for (size_t h = 1; h < slots; ++h) {
    if (approx[h].deg >= 1) {
      if (auto cand = make_candidate(poly_of(approx[h].c, approx[h].deg), ctx, &out.undecided)) {
        double dh = std::nextafter(cand->dist.hi().get_d(), std::numeric_limits<double>::infinity());
        ud[h] = dh;
        us[h] = dh * static_cast<double>(cand->height) * (1 + 1e-15);
      }
    }
    if (h > 1) {
      us[h] = std::min(us[h], us[h - 1]);
      ud[h] = std::min(ud[h], ud[h - 1]);
    }
  }

  // Pass B: every constant term whose rigorous lower bound survives the pruning.
  // For alpha within 1 of xi, |xi - alpha| >= |P(xi)| / D with D >= max |P'| on [xi-1, xi+1].
  struct LocalB {
    std::vector<std::optional<Cand>> best;
    std::uint64_t undecided = 0, verified = 0;
  };
  std::vector<LocalB> lb;
  for_each_upper(n, height, workers, lb, [&](LocalB& local, const Coeffs& c, int deg) {
    if (local.best.empty()) local.best.resize(slots);
    long m = 0;
    __int128 base = 0, err = 1;
    double dbound = 0, mp = 1;
    for (int i = 1; i <= deg; ++i) {
      long ci = c[static_cast<size_t>(i)];
      m = std::max(m, std::labs(ci));
      base += static_cast<__int128>(ci) * fp.x[static_cast<size_t>(i)];
      err += 2 * static_cast<__int128>(std::labs(ci));
      dbound += static_cast<double>(i) * static_cast<double>(std::labs(ci)) * mp;
      mp *= mprime;
    }
    dbound *= 1 + 1e-12;
    const double reach = std::max(us[static_cast<size_t>(m)] / static_cast<double>(m), ud[static_cast<size_t>(m)]);
    long lo = -height, hi = height;
    if (reach < 1) {
      double s = -std::ldexp(static_cast<double>(base), -frac);
      double w = dbound * reach * (1 + kMargin);
      lo = std::max(lo, static_cast<long>(std::floor(s - w)) - 2);
      hi = std::min(hi, static_cast<long>(std::ceil(s + w)) + 2);
    }
    for (long c0 = lo; c0 <= hi; ++c0) {
      unsigned __int128 av = uabs128(base + static_cast<__int128>(c0) * one);
      unsigned __int128 ue = static_cast<unsigned __int128>(err);
      double pl = av > ue ? std::ldexp(static_cast<double>(av - ue), -frac) * (1 - 1e-12) : 0.0;
      long h = std::max(m, std::labs(c0));
      double ld = std::min(1.0, pl / dbound);
      if (static_cast<double>(h) * ld > us[static_cast<size_t>(h)] * (1 + kMargin) &&
          ld > ud[static_cast<size_t>(h)] * (1 + kMargin))
        continue;
      Coeffs cc = c;
      cc[0] = c0;
      auto cand = make_candidate(poly_of(cc, deg), ctx, &local.undecided);
      ++local.verified;
      if (!cand) continue;
      auto& slot = local.best[static_cast<size_t>(cand->height)];
      if (!slot || better(*cand, 1, *slot, 1, ctx, &local.undecided)) slot = std::move(cand);
    }
  });
  for (auto& local : lb) {
    out.undecided += local.undecided;
    out.verified += local.verified;
    for (size_t h = 1; h < local.best.size(); ++h) {
      auto& cand = local.best[h];
      if (!cand) continue;
      if (!out.best[h] || better(*cand, 1, *out.best[h], 1, ctx, &out.undecided)) out.best[h] = std::move(cand);
    }
  }
  return out;
}

void scan_warnings(const Scan& scan, std::vector<std::string>& warnings) {
  if (scan.undecided)
    warnings.push_back(std::to_string(scan.undecided) +
                       " distance comparisons undecided at the precision cap; broken by identity order");
}

}  // namespace

std::vector<AlgebraicNumber> approximants(const RealTarget& target, int n, long height, const SearchPolicy& policy) {
  if (n > 4) throw Error(ErrorCode::DegreeTooLarge, "approximants supports n <= 4");
  std::vector<AlgebraicNumber> out;
  for_each_polynomial(
      n, height,
      [&](const IntPolynomial& p) {
        if (p.degree() < 1 || p.content() != 1 || !is_minimal_polynomial(p)) return true;
        auto roots = real_roots(p, 53);
        int skip = excluded_index(p, roots, target);
        for (size_t i = 0; i < roots.size(); ++i) {
          if (static_cast<int>(i) == skip) continue;
          out.push_back(AlgebraicNumber{p, static_cast<int>(i), roots[i]});
        }
        return true;
      },
      policy.budget);
  std::sort(out.begin(), out.end(), identity_less);
  return out;
}

StarTable psi_star_table(const RealTarget& target, int n, const GridSpec& grid, const SearchPolicy& policy) {
  auto heights = grid_heights(grid);
  Scan scan = star_scan(target, n, heights.back(), policy);
  const Ctx ctx{target, policy.precision, policy.precision_cap};
  StarTable table;
  table.target = target.label();
  table.n = n;
  scan_warnings(scan, table.warnings);

  const Cand* cur = nullptr;
  size_t next = 0;
  for (size_t h = 1; h < scan.best.size() && next < heights.size(); ++h) {
    const auto& b = scan.best[h];
    if (b && (!cur || better(*b, b->height, *cur, cur->height, ctx, &scan.undecided))) cur = &*b;
    if (static_cast<long>(h) == heights[next]) {
      if (!cur) throw Error(ErrorCode::InvalidArgument, "no admissible algebraic approximant up to H = " +
                                                            std::to_string(h));
      StarRow row;
      row.height = static_cast<long>(h);
      row.psi_star = Rat(cur->height) * cur->dist;
      row.witness = cur->alpha;
      table.rows.push_back(std::move(row));
      ++next;
    }
  }
  return table;
}

StarRecords star_records(const RealTarget& target, int n, long max_height, const SearchPolicy& policy) {
  Scan scan = star_scan(target, n, max_height, policy);
  const Ctx ctx{target, policy.precision, policy.precision_cap};
  StarRecords rs;
  rs.target = target.label();
  rs.n = n;
  scan_warnings(scan, rs.warnings);
  const Cand* cur = nullptr;
  for (size_t h = 1; h < scan.best.size(); ++h) {
    const auto& b = scan.best[h];
    if (!b) continue;
    if (cur && compare_weighted(*b, 1, *cur, 1, ctx, nullptr) >= 0) continue;
    cur = &*b;
    rs.entries.push_back(StarRecord{b->alpha, b->dist});
  }
  return rs;
}

ExponentEstimate estimate_star(const StarRecords& records, std::size_t skip) {
  std::vector<const StarRecord*> usable;
  for (const auto& r : records.entries)
    if (r.alpha.height() >= 2) usable.push_back(&r);
  if (usable.size() < skip + 3)
    throw Error(ErrorCode::TooFewRecords, std::to_string(usable.size()) + " star records with H >= 2, need " +
                                              std::to_string(skip + 3));
  ExponentEstimate e;
  e.point = -std::numeric_limits<double>::infinity();
  e.upper = e.point;
  for (size_t i = skip; i < usable.size(); ++i) {
    const StarRecord& r = *usable[i];
    double lh = log_rat(Rat(r.alpha.height()));
    e.point = std::max(e.point, -log_rat(r.distance.hi()) / lh - 1);
    e.upper = std::max(e.upper, -log_rat(r.distance.lo()) / lh - 1);
  }
  e.lower = e.point;
  e.samples = usable.size() - skip;
  return e;
}

ExponentEstimate estimate_star(const StarTable& table, double tail) {
  if (table.rows.size() < 3)
    throw Error(ErrorCode::TooFewRecords, std::to_string(table.rows.size()) + " star rows, need at least 3");
  if (!(tail > 0 && tail <= 1)) throw Error(ErrorCode::InvalidArgument, "tail fraction must be in (0, 1]");
  size_t k = std::max<size_t>(1, static_cast<size_t>(std::ceil(tail * static_cast<double>(table.rows.size()))));
  ExponentEstimate e;
  e.point = std::numeric_limits<double>::infinity();
  e.upper = e.point;
  for (size_t i = table.rows.size() - k; i < table.rows.size(); ++i) {
    const StarRow& row = table.rows[i];
    if (row.height < 2) continue;
    double lh = std::log(static_cast<double>(row.height));
    e.point = std::min(e.point, -log_rat(row.psi_star.hi()) / lh);
    e.upper = std::min(e.upper, -log_rat(row.psi_star.lo()) / lh);
    ++e.samples;
  }
  if (e.samples == 0) throw Error(ErrorCode::TooFewRecords, "no tail rows with H >= 2");
  e.lower = e.point;
  return e;
}

ExponentEstimate estimate_star_mixed(const StarTable& table) {
  ExponentEstimate e;
  e.point = -std::numeric_limits<double>::infinity();
  e.upper = e.point;
  for (const StarRow& row : table.rows) {
    if (row.height < 2) continue;
    double lh = std::log(static_cast<double>(row.height));
    e.point = std::max(e.point, -log_rat(row.psi_star.hi()) / lh);
    e.upper = std::max(e.upper, -log_rat(row.psi_star.lo()) / lh);
    ++e.samples;
  }
  if (e.samples == 0) throw Error(ErrorCode::TooFewRecords, "no star rows with H >= 2");
  e.lower = e.point;
  return e;
}

}  // namespace dioph
