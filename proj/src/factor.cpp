#include "dioph/errors.hpp"
#include "dioph/roots.hpp"

#include <algorithm>
#include <optional>

namespace dioph {

namespace {

std::vector<Int> positive_divisors(const Int& n) {
  Int a = abs(n);
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// A rational root p/q of a primitive polynomial, returned as the factor qx - p.
std::optional<IntPolynomial> find_linear_factor(const IntPolynomial& q) {
  if (q.coeffs().front() == 0) return IntPolynomial{0, 1};
  auto dens = positive_divisors(q.leading());
  auto nums = positive_divisors(q.coeffs().front());
  for (const auto& den : dens) {
    for (const auto& num : nums) {
      for (int sign : {1, -1}) {
        Int p = sign * num;
        Int g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), den.get_mpz_t());
        if (g != 1) continue;
        if (q.eval(Rat(p, den)) == 0) return IntPolynomial(std::vector<Int>{-p, den});
      }
    }
  }
  return std::nullopt;
}

std::optional<std::pair<IntPolynomial, IntPolynomial>> find_quadratic_split(const IntPolynomial& r) {
  const Int r0 = r.coeff(0), r1 = r.coeff(1), r3 = r.coeff(3), r4 = r.coeff(4);
  Int norm2(0);
  for (const auto& c : r.coeffs()) norm2 += c * c;
  Int root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  const Int bound = 2 * (root + 1);

  auto try_pair = [&](const Int& a, const Int& b, const Int& c, const Int& d, const Int& e, const Int& f)
      -> std::optional<std::pair<IntPolynomial, IntPolynomial>> {
    IntPolynomial u(std::vector<Int>{c, b, a});
    IntPolynomial v(std::vector<Int>{f, e, d});
    if (u * v == r) return std::make_pair(u, v);
    return std::nullopt;
  };

  for (const auto& a : positive_divisors(r4)) {
    Int d = r4 / a;
    for (const auto& cabs : positive_divisors(r0)) {
      for (int sign : {1, -1}) {
        Int c = sign * cabs;
        Int f = r0 / c;
        // a e + b d = r3,  f b + c e = r1
        Int det = d * c - a * f;
        if (det != 0) {
          Int bn = r3 * c - a * r1;
          Int en = d * r1 - f * r3;
          if (bn % det != 0 || en % det != 0) continue;
          if (auto hit = try_pair(a, bn / det, c, d, en / det, f)) return hit;
        } else {
          for (Int b = -bound; b <= bound; ++b) {
            Int en = r3 - b * d;
            if (en % a != 0) continue;
            if (auto hit = try_pair(a, b, c, d, en / a, f)) return hit;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

IntPolynomial Factorization::expand() const {
  IntPolynomial out(std::vector<Int>{content});
  for (const auto& [f, m] : factors)
    for (int i = 0; i < m; ++i) out = out * f;
  return out;
}

Factorization factor_small(const IntPolynomial& p) {
  if (p.is_zero() || p.degree() < 1) throw Error(ErrorCode::InvalidArgument, "factor_small needs degree >= 1");
  if (p.degree() > 4) throw Error(ErrorCode::DegreeTooLarge, "factor_small supports degree <= 4");

  Factorization out;
  out.content = p.content();
  if (p.leading() < 0) out.content = -out.content;
  IntPolynomial rest = p.primitive_part();

  std::vector<IntPolynomial> found;
  while (rest.degree() >= 1) {
    auto lin = find_linear_factor(rest);
    if (!lin) break;
    found.push_back(*lin);
    rest = exact_quotient(rest, *lin);
  }
  if (rest.degree() == 4) {
    if (auto split = find_quadratic_split(rest)) {
      found.push_back(split->first.primitive_part());
      found.push_back(split->second.primitive_part());
      rest = IntPolynomial{1};
    }
  }
  if (rest.degree() >= 1) found.push_back(rest);
  // a leftover constant here can only be +-1 because rest stayed primitive
  if (rest.degree() == 0 && rest.coeff(0) < 0) out.content = -out.content;

  std::sort(found.begin(), found.end(), [](const IntPolynomial& a, const IntPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return lex_less(a, b);
  });
  for (const auto& f : found) {
    if (!out.factors.empty() && out.factors.back().first == f) {
      ++out.factors.back().second;
    } else {
      out.factors.emplace_back(f, 1);
    }
  }
  return out;
}

bool is_minimal_polynomial(const IntPolynomial& p) {
  if (p.degree() < 1 || p.leading() < 0 || p.content() != 1) return false;
  return factor_small(p).irreducible();
}

}  // namespace dioph
