#pragma once

#include "dioph/enclosure.hpp"
#include "dioph/intpoly.hpp"
#include "dioph/realnum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dioph {

using IntMatrix = std::vector<std::vector<Int>>;

/// (s+t) x (s+t) Sylvester matrix for the actual degrees s = deg P, t = deg Q:
/// t shifted rows of P's coefficients (highest first), then s rows of Q's.
IntMatrix sylvester(const IntPolynomial& p, const IntPolynomial& q);

/// Exact determinant by Bareiss fraction-free elimination.
Int determinant(IntMatrix m);

/// det sylvester(P, Q). Zero iff P and Q share a complex root.
Int resultant(const IntPolynomial& p, const IntPolynomial& q);

enum class LemmaBranch { P, Q };

struct LemmaCertificate {
  IntPolynomial p, q;
  int s = 0, t = 0;
  Int resultant;
  Enclosure value_p;  // |P(xi)|
  Enclosure value_q;  // |Q(xi)|
  Rat constant;       // K = (s+t)! max(1,|xi|)^(max(s,t)-1), |xi| by an upper bound
  Enclosure term_p;   // |P(xi)| H(P)^(t-1) H(Q)^s
  Enclosure term_q;   // |Q(xi)| H(P)^t H(Q)^(s-1)
  LemmaBranch verdict = LemmaBranch::P;
  bool bound_holds = false;      // |Res| <= K max(term_p, term_q), upper endpoints
  bool corollary_holds = false;  // max(|P|,|Q|) K >= H(P)^(1-t) H(Q)^(1-s) min(1/H(P), 1/H(Q))
  /// K max(term_p, term_q) / |Res| using upper endpoints; >= 1 when the bound holds.
  Rat slack_ratio;
};

/// Checks 1 <= |Res(P,Q)| <= K max{|P(xi)| H(P)^(t-1) H(Q)^s, |Q(xi)| H(P)^t H(Q)^(s-1)}.
/// Throws NotCoprime, ZeroXi, or ZeroValue.
LemmaCertificate lemma_check(const IntPolynomial& p, const IntPolynomial& q, const RealTarget& target,
                             long precision = 128);

struct FuzzConfig {
  std::uint64_t trials = 1000;
  int degree = 3;
  long height = 10;
  Rat xi_lo{-2};
  Rat xi_hi{2};
  /// xi is drawn from the grid xi_lo + k (xi_hi - xi_lo) / denominator.
  long denominator = 1024;
  std::uint64_t seed = 42;
  unsigned workers = 0;  // 0: hardware concurrency
};

struct FuzzReport {
  std::uint64_t trials = 0;
  std::uint64_t valid = 0;
  std::uint64_t corollary_valid = 0;
  std::uint64_t branch_p = 0;
  std::uint64_t branch_q = 0;
  std::uint64_t resampled = 0;
  Rat worst_slack;  // smallest slack_ratio seen (0 when trials = 0)
  std::vector<LemmaCertificate> certificates;  // in trial order
  std::vector<std::string> failures;
};

FuzzReport lemma_fuzz(const FuzzConfig& config);

std::string to_string(LemmaBranch b);

}  // namespace dioph
