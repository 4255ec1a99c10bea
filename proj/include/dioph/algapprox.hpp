#pragma once

#include "dioph/enclosure.hpp"
#include "dioph/intpoly.hpp"
#include "dioph/polysearch.hpp"
#include "dioph/realnum.hpp"

#include <string>
#include <vector>

namespace dioph {

/// A real algebraic number: root `root_index` (0-based, ascending) of its
/// minimal polynomial, with an isolating enclosure.
struct AlgebraicNumber {
  IntPolynomial minpoly;
  int root_index = 0;
  Enclosure isolating;

  int degree() const { return minpoly.degree(); }
  Int height() const { return minpoly.height(); }
  /// "[c0,...,cn]#i"
  std::string to_string() const;
};

/// Orders by (degree, height, lex_less minimal polynomial, root index).
bool identity_less(const AlgebraicNumber& a, const AlgebraicNumber& b);

/// Every real root of every irreducible primitive P with 1 <= deg P <= n and
/// H(P) <= H, except xi itself, sorted by identity_less. Requires n <= 4.
std::vector<AlgebraicNumber> approximants(const RealTarget& target, int n, long height,
                                          const SearchPolicy& policy = {});

/// Enclosure of |xi - alpha|; throws ZeroValue when alpha = xi.
Enclosure star_distance(const AlgebraicNumber& alpha, const RealTarget& target, long precision);

struct StarRow {
  long height = 0;
  Enclosure psi_star;  // H(alpha) |xi - alpha|
  AlgebraicNumber witness;
};

struct StarTable {
  std::string target;
  int n = 0;
  std::vector<StarRow> rows;
  std::vector<std::string> warnings;
};

/// Rows of min H(alpha) |xi - alpha| over deg alpha <= n, H(alpha) <= H, alpha != xi.
StarTable psi_star_table(const RealTarget& target, int n, const GridSpec& grid, const SearchPolicy& policy = {});

struct StarRecord {
  AlgebraicNumber alpha;
  Enclosure distance;
};

struct StarRecords {
  std::string target;
  int n = 0;
  std::vector<StarRecord> entries;
  std::vector<std::string> warnings;
};

/// Approximants alpha_k whose |xi - alpha_k| is strictly smaller than for
/// every alpha of no greater height, up to H(alpha) <= max_height.
StarRecords star_records(const RealTarget& target, int n, long max_height, const SearchPolicy& policy = {});

/// Ordinary: max over records with H >= 2 (after `skip`) of -log|xi - alpha| / log H(alpha) - 1.
ExponentEstimate estimate_star(const StarRecords& records, std::size_t skip = 0);
/// Uniform: min over the last ceil(tail * rows) rows of -log psi_star(H) / log H.
ExponentEstimate estimate_star(const StarTable& table, double tail = 0.5);
/// max over rows with H >= 2 of -log psi*(H) / log H.
ExponentEstimate estimate_star_mixed(const StarTable& table);

}  // namespace dioph
