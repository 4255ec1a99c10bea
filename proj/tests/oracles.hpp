#pragma once

// Brute-force reference implementations used to check the fast searches.

#include "dioph/intpoly.hpp"
#include "dioph/realnum.hpp"

#include <optional>
#include <vector>

namespace oracle {

using dioph::Int;
using dioph::IntPolynomial;
using dioph::Rat;
using dioph::RealTarget;

struct Best {
  IntPolynomial poly;
  dioph::Enclosure value;  // |P(xi)|
};

inline dioph::Enclosure abs_at(const IntPolynomial& p, const RealTarget& t) {
  if (auto r = t.rational_value()) {
    Rat v = abs(p.eval(*r));
    return {v, v};
  }
  return dioph::evaluate(p, t, 512).abs();
}

// -1, 0, 1 by value; overlapping enclosures count as equal.
inline int cmp(const dioph::Enclosure& a, const dioph::Enclosure& b) {
  if (a.certainly_below(b)) return -1;
  if (b.certainly_below(a)) return 1;
  return 0;
}

// Plain nested loops over every coefficient vector of degree <= n, height <= H.
inline std::optional<Best> psi(const RealTarget& t, int n, long H) {
  std::optional<Best> best;
  std::vector<long> c(static_cast<size_t>(n) + 1, -H);
  for (;;) {
    std::vector<Int> coeffs(c.begin(), c.end());
    IntPolynomial p(coeffs);
    if (!p.is_zero() && p.leading() > 0 && dioph::vanishes_exactly(p, t) == dioph::ZeroStatus::Nonzero) {
      dioph::Enclosure v = abs_at(p, t);
      int k = best ? cmp(v, best->value) : -1;
      if (k < 0 || (k == 0 && dioph::lex_less(p, best->poly))) best = Best{p, v};
    }
    size_t i = 0;
    while (i < c.size() && ++c[i] > H) c[i++] = -H;
    if (i == c.size()) break;
  }
  return best;
}

// Heights at which psi strictly decreases, by recomputing psi at every height.
inline std::vector<long> record_heights(const RealTarget& t, int n, long H) {
  std::vector<long> out;
  std::optional<dioph::Enclosure> cur;
  for (long h = 1; h <= H; ++h) {
    auto b = oracle::psi(t, n, h);
    dioph::Enclosure v = b ? b->value : dioph::Enclosure(Rat(1), Rat(1));
    if (!cur || v.certainly_below(*cur)) {
      out.push_back(h);
      cur = v;
    }
  }
  return out;
}

}  // namespace oracle
