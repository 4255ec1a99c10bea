#pragma once

#include <gmpxx.h>

#include <string>

namespace dioph {

using Int = mpz_class;
using Rat = mpq_class;

/// 2^e as an exact rational (e may be negative).
Rat pow2(long e);

Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);

/// floor(log2 |x|) for x != 0.
long ilog2(const Rat& x);

/// Closed interval [lo, hi] certified to contain some real value.
///
/// Endpoints are exact rationals. Every operation that produces a new
/// enclosure keeps the result dyadic by rounding outward onto the grid
/// 2^-bits, so long chains of arithmetic do not grow denominators.
class Enclosure {
 public:
  Enclosure() = default;
  explicit Enclosure(const Rat& point) : lo_(point), hi_(point) {}
  Enclosure(Rat lo, Rat hi);

  const Rat& lo() const noexcept { return lo_; }
  const Rat& hi() const noexcept { return hi_; }

  Rat width() const { return hi_ - lo_; }
  Rat midpoint() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool contains_zero() const { return sgn(lo_) <= 0 && sgn(hi_) >= 0; }
  bool intersects(const Enclosure& other) const {
    return lo_ <= other.hi_ && other.lo_ <= hi_;
  }

  /// Upper bound on |x| for every x in the enclosure.
  Rat mag() const;
  /// Lower bound on |x| for every x in the enclosure (0 if it straddles 0).
  Rat mig() const;

  /// Enclosure of {|x|}.
  Enclosure abs() const;

  /// Outward rounding of both endpoints to multiples of 2^-bits.
  Enclosure rounded(long bits) const;

  /// True iff every element of *this is strictly below every element of other.
  bool certainly_below(const Enclosure& other) const { return hi_ < other.lo_; }

  double lo_double() const { return lo_.get_d(); }
  double hi_double() const { return hi_.get_d(); }

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Rat& k, const Enclosure& a);

  friend bool operator==(const Enclosure& a, const Enclosure& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Rat lo_{0};
  Rat hi_{0};
};

/// Integer power of an enclosure.
Enclosure pow(const Enclosure& x, unsigned e);

/// Hull of two enclosures.
Enclosure hull(const Enclosure& a, const Enclosure& b);

std::string to_string(const Enclosure& e);

}  // namespace dioph
