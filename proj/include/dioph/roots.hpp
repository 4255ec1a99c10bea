#pragma once

#include "dioph/enclosure.hpp"
#include "dioph/intpoly.hpp"

#include <utility>
#include <vector>

namespace dioph {

/// Squarefree part P / gcd(P, P'), primitive with positive leading coefficient.
IntPolynomial squarefree_part(const IntPolynomial& p);

/// Isolating enclosures of the real roots of the squarefree part of P,
/// sorted ascending, each refined by exact-sign bisection to width
/// <= 2^-precision. An exact dyadic root is returned as a point enclosure.
std::vector<Enclosure> real_roots(const IntPolynomial& p, long precision = 53);

/// Refines an isolating enclosure of a simple root of the squarefree
/// polynomial `sqfree` to width <= 2^-precision.
Enclosure refine_root(const IntPolynomial& sqfree, const Enclosure& isolating, long precision);

/// Number of distinct real roots of P in the half-open interval (a, b].
int count_roots(const IntPolynomial& p, const Rat& a, const Rat& b);

struct Factorization {
  Int content;  // signed so that content * prod(factors^mult) == P
  std::vector<std::pair<IntPolynomial, int>> factors;  // primitive, leading > 0

  IntPolynomial expand() const;
  bool irreducible() const {
    return abs(content) == 1 && factors.size() == 1 && factors.front().second == 1;
  }
};

/// Complete factorization over Z for 1 <= deg P <= 4: content removal,
/// rational roots by divisor enumeration, and for a remaining quartic a
/// search over products of two integer quadratics.
Factorization factor_small(const IntPolynomial& p);

/// True iff P is primitive, of positive leading coefficient, and irreducible.
bool is_minimal_polynomial(const IntPolynomial& p);

}  // namespace dioph
