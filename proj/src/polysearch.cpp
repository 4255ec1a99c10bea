#include "dioph/polysearch.hpp"

#include "dioph/errors.hpp"
#include "dioph/fastpoly.hpp"
#include "dioph/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace dioph {

std::string_view to_string(Strategy s) { return s == Strategy::Exhaustive ? "exhaustive" : "hybrid"; }

Strategy parse_strategy(const std::string& text) {
  if (text == "exhaustive") return Strategy::Exhaustive;
  if (text == "hybrid" || text == "lattice-assisted") return Strategy::Hybrid;
  throw Error(ErrorCode::ParseError, "unknown strategy '" + text + "'");
}

double log_rat(const Rat& x) {
  if (sgn(x) <= 0) throw Error(ErrorCode::InvalidArgument, "log of a non-positive number");
  auto log_int = [](const Int& v) {
    long e = 0;
    double d = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(d) + static_cast<double>(e) * std::log(2.0);
  };
  return log_int(x.get_num()) - log_int(x.get_den());
}

Rat dirichlet_bound(int n, long height, const Rat& magnitude) {
  Rat m = std::max(Rat(1), magnitude), mn(1);
  for (int i = 0; i < n; ++i) mn *= m;
  Int denom(1);
  for (int i = 0; i <= n; ++i) denom *= height + 1;
  return Rat(n + 1) * mn * Rat(height) / Rat(denom - 1);
}

Enclosure abs_value(const IntPolynomial& p, const RealTarget& target, long precision, long cap) {
  if (auto v = target.rational_value()) {
    Rat x = ::abs(p.eval(*v));
    if (x == 0) throw Error(ErrorCode::ZeroValue, p.to_string() + " vanishes at " + target.label());
    return Enclosure(x);
  }
  for (long prec = std::max<long>(precision, 1);; prec = std::min(2 * prec, std::max(cap, precision))) {
    Enclosure e = evaluate(p, target, prec);
    if (!e.contains_zero()) {
      Enclosure a = e.abs();
      if (a.width() * pow2(20) <= a.lo() || prec >= cap) return a;
    }
    if (prec >= cap) throw Error(ErrorCode::PrecisionExhausted, "cannot separate " + p.to_string() + " from 0");
  }
}

namespace {

void check_budget(int n, long height, const SearchPolicy& policy) {
  if (n < 1 || height < 1) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and H >= 1");
  Int count = polynomial_count(n, height);
  if (count > Int(std::to_string(policy.budget)))
    throw Error(ErrorCode::OverflowGuard, "enumeration of " + count.get_str() + " polynomials exceeds budget " +
                                              std::to_string(policy.budget));
}

long largest_height_within_budget(int n, const SearchPolicy& policy) {
  const Int budget(std::to_string(policy.budget));
  long lo = 0, hi = 1;
  while (polynomial_count(n, hi) <= budget) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (polynomial_count(n, mid) <= budget ? lo : hi) = mid;
  }
  return lo;
}

ScanOptions scan_options(const SearchPolicy& policy) {
  ScanOptions o;
  o.precision_cap = policy.precision_cap;
  o.workers = policy.workers;
  return o;
}

// -1, 0, 1 comparing values only.
int compare_values(const ScanCandidate& a, const ScanCandidate& b, const RealTarget& target, long cap) {
  if (a.hi < b.lo) return -1;
  if (b.hi < a.lo) return 1;
  return compare_abs_values(a.polynomial(), b.polynomial(), target, cap);
}

int compare_values(const Enclosure& va, const IntPolynomial& a, const Enclosure& vb, const IntPolynomial& b,
                   const RealTarget& target, long cap) {
  if (va.certainly_below(vb)) return -1;
  if (vb.certainly_below(va)) return 1;
  return compare_abs_values(a, b, target, cap);
}

// prefix[h]: best candidate over heights <= h.
std::vector<const ScanCandidate*> prefix_best(const HeightScan& scan, const RealTarget& target, long cap) {
  std::vector<const ScanCandidate*> prefix(scan.best.size(), nullptr);
  const ScanCandidate* cur = nullptr;
  for (size_t h = 1; h < scan.best.size(); ++h) {
    const auto& b = scan.best[h];
    if (b && (!cur || better_candidate(*b, *cur, target, cap))) cur = &*b;
    prefix[h] = cur;
  }
  return prefix;
}

void scan_warnings(const HeightScan& scan, std::vector<std::string>& warnings) {
  if (scan.excluded_unknown)
    warnings.push_back(std::to_string(scan.excluded_unknown) +
                       " candidates excluded: zero status unknown at the precision cap");
  if (scan.undecided_ties)
    warnings.push_back(std::to_string(scan.undecided_ties) +
                       " comparisons undecided at the precision cap; broken by coefficient order");
}

long hybrid_threshold(int n, long max_height, const SearchPolicy& policy) {
  long t = largest_height_within_budget(n, policy);
  if (policy.exhaustive_limit > 0) t = std::min(t, policy.exhaustive_limit);
  return std::min(t, max_height);
}

std::vector<LatticeCandidate> lattice_sweep(const RealTarget& target, int n, long max_height,
                                            const SearchPolicy& policy, std::vector<std::string>& warnings) {
  std::map<std::string, LatticeCandidate> pool;
  Int stop(1);
  for (int i = 0; i <= n; ++i) stop *= 16 * max_height;
  for (long j = 1; 2 * j <= policy.lattice_cap_bits; ++j) {
    Int scale = Int(1) << static_cast<mp_bitcnt_t>(2 * j);
    try {
      for (auto& c : lattice_candidates(target, n, scale, policy)) {
        if (c.height > max_height) continue;
        pool.emplace(c.poly.to_string(), std::move(c));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted) throw;
      warnings.push_back("lattice scale 4^" + std::to_string(j) + " skipped: " + e.what());
    }
    if (scale > stop) break;
  }
  std::vector<LatticeCandidate> out;
  for (auto& [key, c] : pool) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const LatticeCandidate& a, const LatticeCandidate& b) {
    if (a.height != b.height) return a.height < b.height;
    return lex_less(a.poly, b.poly);
  });
  return out;
}

}  // namespace

PsiResult psi(const RealTarget& target, int n, long height, const SearchPolicy& policy) {
  check_budget(n, height, policy);
  HeightScan scan = scan_heights(target, n, height, scan_options(policy));
  auto prefix = prefix_best(scan, target, policy.precision_cap);
  PsiResult out;
  out.witness = prefix[static_cast<size_t>(height)]->polynomial();
  out.value = abs_value(out.witness, target, policy.precision, policy.precision_cap);
  out.excluded_unknown = scan.excluded_unknown;
  return out;
}

std::vector<long> grid_heights(const GridSpec& grid) {
  if (!grid.heights.empty()) {
    for (size_t i = 0; i < grid.heights.size(); ++i)
      if (grid.heights[i] < 1 || (i && grid.heights[i] <= grid.heights[i - 1]))
        throw Error(ErrorCode::InvalidArgument, "grid heights must be positive and increasing");
    return grid.heights;
  }
  if (grid.h0 < 1 || grid.points < 1 || !(grid.ratio > 1))
    throw Error(ErrorCode::InvalidArgument, "grid needs H0 >= 1, ratio > 1, points >= 1");
  std::vector<long> out;
  for (int j = 0; j < grid.points; ++j) {
    long h = std::lround(static_cast<double>(grid.h0) * std::pow(grid.ratio, j));
    if (out.empty() || h > out.back()) out.push_back(h);
  }
  return out;
}

ApproximationTable psi_table(const RealTarget& target, int n, const GridSpec& grid, Strategy strategy,
                             const SearchPolicy& policy) {
  auto heights = grid_heights(grid);
  const long hmax = heights.back();
  const long cap = policy.precision_cap;
  ApproximationTable table;
  table.target = target.label();
  table.n = n;

  long h_ex = hmax;
  if (strategy == Strategy::Exhaustive) {
    check_budget(n, hmax, policy);
  } else {
    h_ex = hybrid_threshold(n, hmax, policy);
    if (h_ex < 1) throw Error(ErrorCode::OverflowGuard, "budget admits no exhaustive search");
  }

  HeightScan scan = scan_heights(target, n, h_ex, scan_options(policy));
  scan_warnings(scan, table.warnings);
  auto prefix = prefix_best(scan, target, cap);

  std::vector<LatticeCandidate> pool;
  if (h_ex < hmax) pool = lattice_sweep(target, n, hmax, policy, table.warnings);

  const ScanCandidate* top = prefix[static_cast<size_t>(h_ex)];
  IntPolynomial ex_poly = top->polynomial();
  Enclosure ex_value = abs_value(ex_poly, target, policy.precision, cap);

  for (long h : heights) {
    TableRow row;
    row.height = h;
    if (h <= h_ex) {
      row.witness = prefix[static_cast<size_t>(h)]->polynomial();
      row.psi = abs_value(row.witness, target, policy.precision, cap);
    } else {
      row.exhaustive = false;
      row.witness = ex_poly;
      row.psi = ex_value;
      for (const auto& c : pool) {
        if (c.height > h) break;
        int cmp = compare_values(c.value, c.poly, row.psi, row.witness, target, cap);
        if (cmp < 0 || (cmp == 0 && lex_less(c.poly, row.witness))) {
          row.witness = c.poly;
          row.psi = c.value;
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<LatticeCandidate> lattice_candidates(const RealTarget& target, int n, const Int& scale,
                                                 const SearchPolicy& policy) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "lattice_candidates needs n >= 1");
  if (scale < 2) throw Error(ErrorCode::InvalidArgument, "lattice scale must be >= 2");

  std::vector<Int> rounded(static_cast<size_t>(n) + 1);
  auto round_half = [](const Rat& x) { return floor_rat(x + Rat(1, 2)); };
  if (auto v = target.rational_value()) {
    Rat p(1);
    for (int i = 0; i <= n; ++i, p *= *v) rounded[static_cast<size_t>(i)] = round_half(Rat(scale) * p);
  } else {
    long prec = static_cast<long>(mpz_sizeinbase(scale.get_mpz_t(), 2)) + 16 +
                n * (ilog2(std::max(Rat(1), target.eval(16).mag())) + 2);
    for (;; prec *= 2) {
      if (prec > policy.precision_cap)
        throw Error(ErrorCode::PrecisionExhausted, "C xi^i does not round stably below the precision cap");
      Enclosure xi = target.eval(prec);
      bool stable = true;
      for (int i = 0; i <= n && stable; ++i) {
        Enclosure p = pow(xi, static_cast<unsigned>(i));
        Int a = round_half(Rat(scale) * p.lo()), b = round_half(Rat(scale) * p.hi());
        stable = a == b;
        rounded[static_cast<size_t>(i)] = a;
      }
      if (stable) break;
    }
  }

  std::vector<IntVector> basis;
  for (int i = 0; i <= n; ++i) {
    IntVector row(static_cast<size_t>(n) + 2, Int(0));
    row[static_cast<size_t>(i)] = 1;
    row.back() = rounded[static_cast<size_t>(i)];
    basis.push_back(std::move(row));
  }
  basis = lll_reduce(std::move(basis));

  std::map<std::string, IntPolynomial> found;
  const size_t k = basis.size();
  std::vector<int> mult(k, -1);
  for (;;) {
    std::vector<Int> coeffs(static_cast<size_t>(n) + 1, Int(0));
    for (size_t j = 0; j < k; ++j)
      if (mult[j])
        for (int i = 0; i <= n; ++i) coeffs[static_cast<size_t>(i)] += mult[j] * basis[j][static_cast<size_t>(i)];
    IntPolynomial p(std::move(coeffs));
    if (!p.is_zero()) {
      IntPolynomial c = p.canonical();
      found.emplace(c.to_string(), c);
      IntPolynomial pp = p.primitive_part();
      found.emplace(pp.to_string(), pp);
    }
    size_t j = 0;
    while (j < k && mult[j] == 1) mult[j++] = -1;
    if (j == k) break;
    ++mult[j];
  }

  std::vector<LatticeCandidate> out;
  for (auto& [key, p] : found) {
    if (p.degree() < 1) continue;
    if (vanishes_exactly(p, target, policy.precision_cap) != ZeroStatus::Nonzero) continue;
    LatticeCandidate c;
    c.poly = p;
    c.height = p.height();
    c.value = abs_value(p, target, policy.precision, policy.precision_cap);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const LatticeCandidate& a, const LatticeCandidate& b) {
    if (a.height != b.height) return a.height < b.height;
    return lex_less(a.poly, b.poly);
  });
  return out;
}

RecordSequence records(const RealTarget& target, int n, long max_height, Strategy strategy,
                       const SearchPolicy& policy) {
  const long cap = policy.precision_cap;
  RecordSequence rs;
  rs.target = target.label();
  rs.n = n;
  rs.strategy = strategy;

  long h_ex = max_height;
  if (strategy == Strategy::Exhaustive) {
    check_budget(n, max_height, policy);
  } else {
    h_ex = hybrid_threshold(n, max_height, policy);
    if (h_ex < 1) throw Error(ErrorCode::OverflowGuard, "budget admits no exhaustive search");
  }

  HeightScan scan = scan_heights(target, n, h_ex, scan_options(policy));
  scan_warnings(scan, rs.warnings);
  const ScanCandidate* cur = nullptr;
  for (size_t h = 1; h < scan.best.size(); ++h) {
    const auto& b = scan.best[h];
    if (!b) continue;
    if (cur && compare_values(*b, *cur, target, cap) >= 0) continue;
    cur = &*b;
    Record r;
    r.poly = b->polynomial();
    r.height = b->height;
    r.value = abs_value(r.poly, target, policy.precision, cap);
    rs.entries.push_back(std::move(r));
  }

  if (h_ex < max_height) {
    auto pool = lattice_sweep(target, n, max_height, policy, rs.warnings);
    size_t i = 0;
    while (i < pool.size()) {
      size_t j = i;
      size_t best = i;
      while (j < pool.size() && pool[j].height == pool[i].height) {
        int cmp = compare_values(pool[j].value, pool[j].poly, pool[best].value, pool[best].poly, target, cap);
        if (cmp < 0 || (cmp == 0 && lex_less(pool[j].poly, pool[best].poly))) best = j;
        ++j;
      }
      const auto& c = pool[best];
      const Record& last = rs.entries.back();
      if (c.height > h_ex && compare_values(c.value, c.poly, last.value, last.poly, target, cap) < 0) {
        Record r;
        r.poly = c.poly;
        r.height = c.height;
        r.value = c.value;
        r.certified = false;
        rs.entries.push_back(std::move(r));
      }
      i = j;
    }
  }
  return rs;
}

double record_slope(const Record& r) {
  if (r.height < 2) throw Error(ErrorCode::InvalidArgument, "slope needs height >= 2");
  return -log_rat(r.value.hi()) / log_rat(Rat(r.height));
}

double rational_slope(const Record& r) {
  if (r.poly.degree() != 1) throw Error(ErrorCode::InvalidArgument, "rational slope needs a linear record");
  Int q = ::abs(r.poly.coeff(1));
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "rational slope needs denominator >= 2");
  return -log_rat(r.value.hi() / Rat(q)) / log_rat(Rat(q));
}

ExponentEstimate estimate_ordinary(const RecordSequence& rs, std::size_t skip) {
  std::vector<const Record*> usable;
  for (const auto& r : rs.entries)
    if (r.height >= 2) usable.push_back(&r);
  if (usable.size() <= skip)
    throw Error(ErrorCode::TooFewRecords, std::to_string(usable.size()) + " records with H >= 2, need more than " +
                                              std::to_string(skip));
  ExponentEstimate e;
  e.strategy = rs.strategy;
  e.point = -std::numeric_limits<double>::infinity();
  e.upper = e.point;
  for (size_t i = skip; i < usable.size(); ++i) {
    const Record& r = *usable[i];
    double lh = log_rat(Rat(r.height));
    e.point = std::max(e.point, -log_rat(r.value.hi()) / lh);
    e.upper = std::max(e.upper, -log_rat(r.value.lo()) / lh);
  }
  e.lower = e.point;
  e.samples = usable.size() - skip;
  return e;
}

ExponentEstimate estimate_uniform(const ApproximationTable& table, double tail) {
  if (table.rows.size() < 4)
    throw Error(ErrorCode::TooFewRows, std::to_string(table.rows.size()) + " rows, need at least 4");
  if (!(tail > 0 && tail <= 1)) throw Error(ErrorCode::InvalidArgument, "tail fraction must be in (0, 1]");
  size_t k = static_cast<size_t>(std::ceil(tail * static_cast<double>(table.rows.size())));
  k = std::max<size_t>(k, 1);
  ExponentEstimate e;
  e.strategy = Strategy::Exhaustive;
  e.point = std::numeric_limits<double>::infinity();
  e.upper = e.point;
  for (size_t i = table.rows.size() - k; i < table.rows.size(); ++i) {
    const TableRow& row = table.rows[i];
    if (row.height < 2) continue;
    if (!row.exhaustive) e.strategy = Strategy::Hybrid;
    double lh = std::log(static_cast<double>(row.height));
    e.point = std::min(e.point, -log_rat(row.psi.hi()) / lh);
    e.upper = std::min(e.upper, -log_rat(row.psi.lo()) / lh);
    ++e.samples;
  }
  if (e.samples == 0) throw Error(ErrorCode::TooFewRows, "no tail rows with H >= 2");
  e.lower = e.point;
  return e;
}

}  // namespace dioph
