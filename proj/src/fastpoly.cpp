#include "dioph/fastpoly.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace dioph {

namespace {

__int128 to_i128(const Int& v) {
  Int a = ::abs(v), hi, lo;
  mpz_tdiv_q_2exp(hi.get_mpz_t(), a.get_mpz_t(), 64);
  mpz_tdiv_r_2exp(lo.get_mpz_t(), a.get_mpz_t(), 64);
  if (hi.get_ui() >> 62) throw Error(ErrorCode::OverflowGuard, "fixed-point value exceeds 126 bits");
  unsigned __int128 u = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
  __int128 s = static_cast<__int128>(u);
  return sgn(v) < 0 ? -s : s;
}

unsigned __int128 uabs(__int128 v) { return v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v); }

}  // namespace

FixedPowers fixed_powers(const RealTarget& target, int n, long height) {
  if (n < 1 || n > kMaxFastDegree) throw Error(ErrorCode::InvalidArgument, "fast scan supports 1 <= n <= 8");
  Rat m = std::max(Rat(1), target.eval(64).mag());
  Rat mn(1);
  for (int i = 0; i < n; ++i) mn *= m;
  Rat bound = 2 * Rat(n) * Rat(height) * mn + 4 * Rat(height) + 8;
  int frac = 124 - static_cast<int>(ilog2(bound) + 1);
  if (frac < 40) throw Error(ErrorCode::PrecisionExhausted, "fixed-point scan would keep fewer than 40 fraction bits");

  FixedPowers out;
  out.n = n;
  out.frac_bits = frac;
  const Rat target_width = pow2(-(frac + 1));
  for (long prec = frac + 8 + n * (ilog2(m) + 2);; prec += 32) {
    Enclosure xi = target.eval(prec);
    std::vector<__int128> x(static_cast<size_t>(n) + 1);
    x[0] = static_cast<__int128>(1) << frac;
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) {
      Enclosure p = pow(xi, static_cast<unsigned>(i));
      if (p.width() > target_width) {
        ok = false;
        break;
      }
      x[static_cast<size_t>(i)] = to_i128(floor_rat(p.midpoint() * pow2(frac)));
    }
    if (ok) {
      out.x = std::move(x);
      return out;
    }
  }
}

int compare_abs_values(const IntPolynomial& p, const IntPolynomial& q, const RealTarget& target, long cap,
                       bool* undecided) {
  if (undecided) *undecided = false;
  if (p == q || p == -q) return 0;
  bool checked_exact = false;
  for (long prec = 128;; prec *= 2) {
    Enclosure a = evaluate(p, target, prec).abs();
    Enclosure b = evaluate(q, target, prec).abs();
    if (a.certainly_below(b)) return -1;
    if (b.certainly_below(a)) return 1;
    if (!checked_exact) {
      checked_exact = true;
      if (vanishes_exactly(p - q, target, cap) == ZeroStatus::Zero) return 0;
      if (vanishes_exactly(p + q, target, cap) == ZeroStatus::Zero) return 0;
    }
    if (prec >= cap) {
      if (undecided) *undecided = true;
      return 0;
    }
  }
}

IntPolynomial ScanCandidate::polynomial() const {
  std::vector<Int> v;
  for (int i = 0; i <= degree; ++i) v.emplace_back(c[static_cast<size_t>(i)]);
  return IntPolynomial(std::move(v));
}

bool better_candidate(const ScanCandidate& a, const ScanCandidate& b, const RealTarget& target, long cap,
                      std::uint64_t* undecided) {
  if (a.hi < b.lo) return true;
  if (b.hi < a.lo) return false;
  IntPolynomial pa = a.polynomial(), pb = b.polynomial();
  bool open = false;
  int cmp = compare_abs_values(pa, pb, target, cap, &open);
  if (open && undecided) ++*undecided;
  if (cmp != 0) return cmp < 0;
  return lex_less(pa, pb);
}

HeightScan scan_heights(const RealTarget& target, int n, long height, const ScanOptions& options) {
  if (height < 1) throw Error(ErrorCode::InvalidArgument, "height must be >= 1");
  const FixedPowers fp = fixed_powers(target, n, height);
  const __int128 one = fp.x[0];
  const long side = 2 * height + 1;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(side))
      throw Error(ErrorCode::OverflowGuard, "scan space too large");
    total *= static_cast<std::uint64_t>(side);
  }

  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  constexpr std::uint64_t kChunk = 1 << 12;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total / kChunk + 1));

  struct Local {
    std::vector<std::optional<ScanCandidate>> best;
    std::uint64_t unknown = 0, undecided = 0;
  };
  std::vector<Local> locals(workers);
  std::atomic<std::uint64_t> next{0};
  const long cap = options.precision_cap;

  auto work = [&](Local& local) {
    local.best.assign(static_cast<size_t>(height) + 1, std::nullopt);
    std::array<long, kMaxFastDegree + 1> c{};
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

        long m = 0;
        __int128 base = 0, err = 1;
        for (int i = 1; i <= deg; ++i) {
          long ci = c[static_cast<size_t>(i)];
          m = std::max(m, std::labs(ci));
          base += static_cast<__int128>(ci) * fp.x[static_cast<size_t>(i)];
          err += 2 * static_cast<__int128>(std::labs(ci));
        }
        const __int128 t = (-base) >> fp.frac_bits;
        for (__int128 c0 = t - 1; c0 <= t + 2; ++c0) {
          if (c0 > height || c0 < -height) continue;
          __int128 v = base + c0 * one;
          unsigned __int128 av = uabs(v), ue = static_cast<unsigned __int128>(err);
          if (av >= ue && av - ue >= static_cast<unsigned __int128>(one)) continue;
          ScanCandidate cand;
          cand.c = c;
          cand.c[0] = static_cast<long>(c0);
          cand.degree = deg;
          cand.height = std::max(m, static_cast<long>(c0 < 0 ? -c0 : c0));
          if (av > ue) {
            cand.lo = av - ue;
            cand.hi = av + ue;
          } else {
            ZeroStatus z = vanishes_exactly(cand.polynomial(), target, cap);
            if (z == ZeroStatus::Zero) continue;
            if (z == ZeroStatus::Unknown) {
              ++local.unknown;
              continue;
            }
            cand.lo = 0;
            cand.hi = av + ue;
          }
          auto& slot = local.best[static_cast<size_t>(cand.height)];
          if (!slot || better_candidate(cand, *slot, target, cap, &local.undecided)) slot = cand;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, std::ref(locals[w]));
  work(locals[0]);
  for (auto& th : pool) th.join();

  HeightScan out;
  out.frac_bits = fp.frac_bits;
  out.best.assign(static_cast<size_t>(height) + 1, std::nullopt);
  ScanCandidate unit;
  unit.c[0] = 1;
  unit.degree = 0;
  unit.height = 1;
  unit.lo = unit.hi = static_cast<unsigned __int128>(one);
  out.best[1] = unit;
  for (auto& local : locals) {
    out.excluded_unknown += local.unknown;
    out.undecided_ties += local.undecided;
    for (size_t h = 1; h < local.best.size(); ++h) {
      const auto& cand = local.best[h];
      if (!cand) continue;
      if (!out.best[h] || better_candidate(*cand, *out.best[h], target, cap, &out.undecided_ties))
        out.best[h] = cand;
    }
  }
  return out;
}

}  // namespace dioph
