#pragma once

#include "dioph/enclosure.hpp"
#include "dioph/intpoly.hpp"
#include "dioph/realnum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dioph {

enum class Strategy { Exhaustive, Hybrid };

std::string_view to_string(Strategy s);
Strategy parse_strategy(const std::string& text);

struct SearchPolicy {
  long precision = 128;  // bits for witness enclosures
  long precision_cap = kDefaultPrecisionCap;
  std::uint64_t budget = kDefaultEnumerationBudget;
  unsigned workers = 0;  // 0: hardware concurrency
  /// Hybrid: exhaustive up to this height (0: largest height within budget).
  long exhaustive_limit = 0;
  /// Hybrid: lattice scales C = 4^j stop once C exceeds this many bits.
  long lattice_cap_bits = 160;
};

/// Enclosure of |P(xi)| that excludes 0 and is tight to about 2^-20 relative,
/// escalating precision as needed. Throws PrecisionExhausted at the cap.
Enclosure abs_value(const IntPolynomial& p, const RealTarget& target, long precision, long cap);

struct PsiResult {
  Enclosure value;
  IntPolynomial witness;
  std::uint64_t excluded_unknown = 0;
};

/// min |P(xi)| over P with deg <= n, H(P) <= H and P(xi) != 0; the witness is
/// the lex_less-least minimizer. Throws OverflowGuard over budget.
PsiResult psi(const RealTarget& target, int n, long height, const SearchPolicy& policy = {});

struct GridSpec {
  long h0 = 5;
  double ratio = 1.5;
  int points = 6;
  /// When nonempty, used instead of the geometric grid (must be increasing).
  std::vector<long> heights;
};

/// H_j = round(h0 ratio^j), j < points, with repeats dropped.
std::vector<long> grid_heights(const GridSpec& grid);

struct TableRow {
  long height = 0;
  Enclosure psi;
  IntPolynomial witness;
  bool exhaustive = true;  // false: lattice-assisted upper bound
};

struct ApproximationTable {
  std::string target;
  int n = 0;
  std::vector<TableRow> rows;
  std::vector<std::string> warnings;
};

ApproximationTable psi_table(const RealTarget& target, int n, const GridSpec& grid, Strategy strategy,
                             const SearchPolicy& policy = {});

struct LatticeCandidate {
  IntPolynomial poly;
  Int height;
  Enclosure value;  // |P(xi)|
};

/// Reduces the lattice spanned by (e_i, round(C xi^i)), i = 0..n, and returns
/// the canonical nonzero-valued polynomials found among small combinations
/// of the reduced basis, each with a rigorous value, sorted by height.
std::vector<LatticeCandidate> lattice_candidates(const RealTarget& target, int n, const Int& scale,
                                                 const SearchPolicy& policy = {});

struct Record {
  Int height;
  Enclosure value;
  IntPolynomial poly;
  bool certified = true;  // false for lattice-assisted entries
};

struct RecordSequence {
  std::string target;
  int n = 0;
  Strategy strategy = Strategy::Exhaustive;
  std::vector<Record> entries;
  std::vector<std::string> warnings;
};

RecordSequence records(const RealTarget& target, int n, long max_height, Strategy strategy,
                       const SearchPolicy& policy = {});

struct ExponentEstimate {
  double point = 0;
  double lower = 0;
  double upper = 0;
  std::size_t samples = 0;
  Strategy strategy = Strategy::Exhaustive;
};

/// Natural log of a positive rational.
double log_rat(const Rat& x);

/// -log|P(xi)| / log H(P) with the value's upper (conservative) endpoint.
double record_slope(const Record& r);
/// For n = 1 records P = qx - p: -log|xi - p/q| / log q.
double rational_slope(const Record& r);

/// max over records with H >= 2, after skipping the first `skip` of those, of record_slope.
ExponentEstimate estimate_ordinary(const RecordSequence& rs, std::size_t skip = 2);

/// min over the last ceil(tail * rows) rows of -log psi_hi(H) / log H.
ExponentEstimate estimate_uniform(const ApproximationTable& table, double tail = 0.5);

/// (n+1) max(1,|xi|)^n H / ((H+1)^(n+1) - 1), with |xi| replaced by `magnitude`.
Rat dirichlet_bound(int n, long height, const Rat& magnitude);

}  // namespace dioph
