#pragma once

#include "dioph/enclosure.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace dioph {

class RealTarget;

/// Integer polynomial, coefficients stored constant term first.
///
/// The stored vector never has a trailing zero, so degree() is the index of
/// the last stored coefficient and the zero polynomial has degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Int>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of x^i (zero beyond the degree).
  Int coeff(int i) const;
  const Int& leading() const;

  /// max |c_i|; throws ZeroPolynomial for P = 0.
  Int height() const;
  Int content() const;
  /// Primitive part with positive leading coefficient.
  IntPolynomial primitive_part() const;
  /// Sign-normalized copy (leading coefficient > 0).
  IntPolynomial canonical() const;
  IntPolynomial derivative() const;

  Rat eval(const Rat& x) const;
  int sign_at(const Rat& x) const { return sgn(eval(x)); }

  /// "[c0,c1,...,cn]"; the zero polynomial prints as "[0]".
  std::string to_string() const;
  /// Human-readable form, highest power first: "5x-7", "x^2-2".
  std::string pretty() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const Int& k, const IntPolynomial& a);
  friend IntPolynomial operator-(const IntPolynomial& a);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) = default;

 private:
  void trim();
  std::vector<Int> coeffs_;
};

/// Lexicographic order on coefficient vectors read from the highest power
/// down, both padded to the same length. This is the enumeration order and
/// the tie-break for minimizers.
bool lex_less(const IntPolynomial& a, const IntPolynomial& b);

IntPolynomial parse_polynomial(const std::string& text);

/// Primitive gcd with positive leading coefficient, by the subresultant
/// remainder sequence. gcd(P, 0) = primitive_part(P).
IntPolynomial gcd(const IntPolynomial& p, const IntPolynomial& q);

/// Pseudo-remainder prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

/// True when d divides p over Q (equivalently over Z for primitive d).
bool divides(const IntPolynomial& d, const IntPolynomial& p);

/// Exact quotient p / d over Z; throws InvalidArgument when not exact.
IntPolynomial exact_quotient(const IntPolynomial& p, const IntPolynomial& d);

// ---------------------------------------------------------------------------
// Enumeration

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000'000ULL;

/// ((2H+1)^(n+1) - 1) / 2: number of nonzero canonical polynomials with
/// degree <= n and height <= H.
Int polynomial_count(int n, long height);

/// Visits every nonzero polynomial with degree <= n and height <= H once,
/// in canonical form, in lex_less order. Throws OverflowGuard if the count
/// exceeds the budget. The visitor returns false to stop early.
void for_each_polynomial(int n, long height,
                         const std::function<bool(const IntPolynomial&)>& visit,
                         std::uint64_t budget = kDefaultEnumerationBudget);

/// Range-partitioned enumeration: splits the sequence into `parts` contiguous
/// blocks keyed on the two leading coefficients; visiting blocks 0..parts-1
/// in order reproduces for_each_polynomial exactly.
void for_each_polynomial_part(int n, long height, int part, int parts,
                              const std::function<bool(const IntPolynomial&)>& visit,
                              std::uint64_t budget = kDefaultEnumerationBudget);

std::vector<IntPolynomial> enumerate(int n, long height,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

// ---------------------------------------------------------------------------
// Evaluation at real targets

/// Enclosure of P(xi). Width <= H(P) (deg P + 1) max(1,|xi|)^deg P 2^(1-precision).
Enclosure evaluate(const IntPolynomial& p, const RealTarget& target, long precision);

enum class ZeroStatus { Zero, Nonzero, Unknown };

std::string_view to_string(ZeroStatus s);

inline constexpr long kDefaultStartPrecision = 64;
inline constexpr long kDefaultPrecisionCap = 4096;

/// Exact for rational and algebraic targets; otherwise escalates precision
/// from `start` (doubling) up to `cap` looking for an enclosure excluding 0.
ZeroStatus vanishes_exactly(const IntPolynomial& p, const RealTarget& target,
                            long cap = kDefaultPrecisionCap,
                            long start = kDefaultStartPrecision);

}  // namespace dioph
