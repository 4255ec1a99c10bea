#include "dioph/enclosure.hpp"

#include "dioph/decimal.hpp"
#include "dioph/errors.hpp"

#include <algorithm>

namespace dioph {

Rat pow2(long e) {
  Rat r(1);
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

long ilog2(const Rat& x) {
  if (sgn(x) == 0) throw Error(ErrorCode::InvalidArgument, "ilog2 of zero");
  Int num = abs(x.get_num());
  const Int& den = x.get_den();
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  // 2^(e-1) < |x| < 2^(e+1); settle which side of 2^e we are on.
  if (Rat(abs(x)) >= pow2(e)) return e;
  return e - 1;
}

Enclosure::Enclosure(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw Error(ErrorCode::InvalidArgument, "enclosure with lo > hi");
}

Rat Enclosure::mag() const { return std::max(Rat(::abs(lo_)), Rat(::abs(hi_))); }

Rat Enclosure::mig() const {
  if (contains_zero()) return Rat(0);
  return std::min(Rat(::abs(lo_)), Rat(::abs(hi_)));
}

Enclosure Enclosure::abs() const {
  if (sgn(lo_) >= 0) return *this;
  if (sgn(hi_) <= 0) return Enclosure(-hi_, -lo_);
  return Enclosure(Rat(0), mag());
}

Enclosure Enclosure::rounded(long bits) const {
  Rat scale = pow2(bits);
  Rat lo(floor_rat(lo_ * scale));
  Rat hi(ceil_rat(hi_ * scale));
  lo /= scale;
  hi /= scale;
  return Enclosure(lo, hi);
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Enclosure operator-(const Enclosure& a) { return Enclosure(-a.hi_, -a.lo_); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rat p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
  return Enclosure(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

Enclosure operator*(const Rat& k, const Enclosure& a) {
  if (sgn(k) >= 0) return Enclosure(k * a.lo_, k * a.hi_);
  return Enclosure(k * a.hi_, k * a.lo_);
}

Enclosure pow(const Enclosure& x, unsigned e) {
  Enclosure r(Rat(1));
  for (unsigned i = 0; i < e; ++i) r = r * x;
  if (e % 2 == 0 && r.lo() < 0) r = Enclosure(Rat(0), r.hi());
  return r;
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

std::string to_string(const Enclosure& e) {
  return "[" + format_decimal(e.lo(), 17, Rounding::Down) + ", " +
         format_decimal(e.hi(), 17, Rounding::Up) + "]";
}

}  // namespace dioph
