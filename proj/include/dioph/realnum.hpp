#pragma once

#include "dioph/enclosure.hpp"
#include "dioph/intpoly.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dioph {

enum class TargetKind { Rational, AlgebraicRoot, ContinuedFraction, FibonacciWordCF, LiouvilleSeries, DigitStream };

std::string_view to_string(TargetKind kind);

/// Supplies the k-th term of a sequence, or nullopt when it has run out.
using TermGenerator = std::function<std::optional<Int>(std::size_t)>;

namespace detail {
class TargetImpl;
}

/// A constructively defined real number xi.
///
/// Targets are immutable handles; copies share the underlying state, which
/// memoizes generated terms and the tightest enclosure seen so far behind a
/// mutex. eval() is safe to call concurrently.
class RealTarget {
 public:
  static RealTarget rational(const Rat& value);
  /// Root number `index` (0-based, ascending) of an irreducible primitive
  /// polynomial of degree <= 4.
  static RealTarget algebraic_root(const IntPolynomial& minimal_polynomial, int index);
  /// [a0; a1, a2, ...] with a_k >= 1 for k >= 1; term 0 is the integer part.
  static RealTarget continued_fraction(TermGenerator terms, std::string spec);
  /// [prefix..., period, period, ...]; an empty period makes the expansion finite
  /// (further terms raise GeneratorExhausted).
  static RealTarget periodic_continued_fraction(std::vector<Int> prefix, std::vector<Int> period);
  /// [0; s1, s2, ...] where s is the Fibonacci word over {a, b}.
  static RealTarget fibonacci_word_cf(long a, long b);
  /// sum_{k>=1} base^(-e_k) for strictly increasing positive exponents e_k
  /// (exponents(k) for k = 1, 2, ...).
  static RealTarget liouville(long base, TermGenerator exponents, std::string exponent_spec);
  /// sum_{k>=1} base^(-k!).
  static RealTarget liouville_factorial(long base);
  /// 0.d1 d2 d3 ... in base 10 with digits from a seeded counter-based generator.
  static RealTarget digits(std::uint64_t seed);

  TargetKind kind() const;
  /// Canonical spec string, parseable by parse_target.
  const std::string& spec() const;
  const std::string& label() const;
  RealTarget with_label(std::string label) const;

  /// Enclosure containing xi with width <= 2^-precision.
  Enclosure eval(long precision) const;

  /// Exact value for rational targets.
  std::optional<Rat> rational_value() const;
  /// Minimal polynomial of algebraic (incl. rational) targets.
  std::optional<IntPolynomial> minimal_polynomial() const;
  /// Whether the construction is known (or, for DigitStream, treated) to be transcendental.
  bool transcendental() const;

  /// Continued-fraction term k (CF kinds only).
  Int cf_term(std::size_t k) const;
  /// Liouville exponent e_k, k >= 1 (LiouvilleSeries only).
  Int liouville_exponent(std::size_t k) const;
  long liouville_base() const;

  /// Upper bound on |xi|.
  Rat magnitude_bound() const;

 private:
  explicit RealTarget(std::shared_ptr<detail::TargetImpl> impl, std::string label);
  std::shared_ptr<detail::TargetImpl> impl_;
  std::string label_;
};

inline Enclosure eval(const RealTarget& target, long precision) { return target.eval(precision); }

/// First `length` letters of the limit of f1 = a, f2 = ab, f(k+1) = f(k) f(k-1).
std::vector<long> fibonacci_word_prefix(long a, long b, std::size_t length);

/// k-th continued-fraction convergent (CF kinds), k-term partial sum
/// (LiouvilleSeries, k >= 1), or the value itself (Rational).
Rat convergent(const RealTarget& target, std::size_t k);

/// Partial quotients certified by an enclosure: the longest prefix shared by
/// every number in it.
std::vector<Int> continued_fraction_of(const Enclosure& e);

/// Parses the target mini-language:
///   rational:7/5   algroot:[-2,0,1]:1   extremal:1,2   liouville:10:factorial
///   liouville:2:1,3,7   digits:seed=42   cf:1;2   cf:0,1,2;3
RealTarget parse_target(const std::string& text);

/// Counter-based splitmix64 mixer used by DigitStream and seeded experiments.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dioph
