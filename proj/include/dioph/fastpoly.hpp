#pragma once

#include "dioph/intpoly.hpp"
#include "dioph/realnum.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace dioph {

inline constexpr int kMaxFastDegree = 8;

/// Fixed-point images X_i of xi^i with |X_i - xi^i 2^F| < 2.
struct FixedPowers {
  int n = 0;
  int frac_bits = 0;
  std::vector<__int128> x;
};

/// Chooses F so that every sum c_0 X_0 + ... + c_n X_n with |c_i| <= H + 2
/// stays below 2^125 in magnitude. Throws PrecisionExhausted if F < 40.
FixedPowers fixed_powers(const RealTarget& target, int n, long height);

/// Three-way comparison of |P(xi)| and |Q(xi)|. Returns 0 when the values
/// are equal or could not be separated at the cap; `undecided` is set in
/// the latter case.
int compare_abs_values(const IntPolynomial& p, const IntPolynomial& q, const RealTarget& target, long cap,
                       bool* undecided = nullptr);

/// A polynomial with a fixed-point enclosure [lo, hi] of |P(xi)| in units of 2^-F.
struct ScanCandidate {
  std::array<long, kMaxFastDegree + 1> c{};
  int degree = -1;
  long height = 0;
  unsigned __int128 lo = 0, hi = 0;

  IntPolynomial polynomial() const;
};

struct ScanOptions {
  long precision_cap = kDefaultPrecisionCap;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// best[h] is the minimizer of |P(xi)| over nonzero-valued P with deg <= n and
/// height exactly h (ties: lex_less), for h = 1..H; index 0 is unused.
/// Polynomials with |P(xi)| >= 1 other than the constant 1 are skipped since
/// the constant 1 always dominates them.
struct HeightScan {
  std::vector<std::optional<ScanCandidate>> best;
  int frac_bits = 0;
  std::uint64_t excluded_unknown = 0;
  std::uint64_t undecided_ties = 0;
};

/// Exhaustive scan over deg <= n, height <= H. For each choice of c_1..c_n
/// only the constant terms nearest to -(c_1 xi + ... + c_n xi^n) can give a
/// value below 1, so the inner loop over c_0 collapses to four candidates.
/// Deterministic for any worker count.
HeightScan scan_heights(const RealTarget& target, int n, long height, const ScanOptions& options);

/// Returns true when a is better than b: smaller |value|, ties broken by lex_less.
bool better_candidate(const ScanCandidate& a, const ScanCandidate& b, const RealTarget& target, long cap,
                      std::uint64_t* undecided = nullptr);

}  // namespace dioph
