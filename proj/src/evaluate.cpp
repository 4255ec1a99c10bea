#include "dioph/errors.hpp"
#include "dioph/intpoly.hpp"
#include "dioph/realnum.hpp"

namespace dioph {

namespace {

Enclosure horner(const IntPolynomial& p, const Enclosure& x, long grid) {
  const auto& c = p.coeffs();
  Enclosure acc(Rat(c.back()));
  for (size_t i = c.size() - 1; i-- > 0;) acc = (acc * x + Enclosure(Rat(c[i]))).rounded(grid);
  return acc;
}

}  // namespace

Enclosure evaluate(const IntPolynomial& p, const RealTarget& target, long precision) {
  if (precision < 1) throw Error(ErrorCode::InvalidArgument, "precision must be >= 1");
  if (p.degree() <= 0) return Enclosure(Rat(p.coeff(0)));
  const int n = p.degree();

  Enclosure xi = target.eval(std::max<long>(precision, 8));
  Rat m = std::max(Rat(1), xi.mag());
  Rat allowed = Rat(p.height()) * (n + 1) * pow2(1 - precision);
  for (int i = 0; i < n; ++i) allowed *= m;

  // Extra bits cover the derivative factor n(n+1)/2 and the Horner rounding.
  long extra = 4;
  for (long f = static_cast<long>(n) * (n + 1); f > 1; f >>= 1) ++extra;
  for (long guard = extra;; guard += 16) {
    Enclosure x = target.eval(precision + guard);
    Enclosure v = horner(p, x, precision + guard + 2);
    if (v.width() <= allowed) return v;
    if (guard > extra + 4096) throw Error(ErrorCode::PrecisionExhausted, "evaluate: enclosure did not tighten");
  }
}

ZeroStatus vanishes_exactly(const IntPolynomial& p, const RealTarget& target, long cap, long start) {
  if (p.is_zero()) return ZeroStatus::Zero;
  if (p.degree() == 0) return ZeroStatus::Nonzero;
  if (auto v = target.rational_value()) return p.eval(*v) == 0 ? ZeroStatus::Zero : ZeroStatus::Nonzero;
  if (auto m = target.minimal_polynomial()) return divides(*m, p) ? ZeroStatus::Zero : ZeroStatus::Nonzero;
  for (long prec = std::max<long>(start, 1);; prec *= 2) {
    prec = std::min(prec, cap);
    if (!evaluate(p, target, prec).contains_zero()) return ZeroStatus::Nonzero;
    if (prec >= cap) return ZeroStatus::Unknown;
  }
}

}  // namespace dioph
