#include "dioph/roots.hpp"

#include "dioph/errors.hpp"

#include <algorithm>

namespace dioph {

namespace {

// Divide by |content| only, preserving the sign pattern.
IntPolynomial reduce_positive(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  Int g = p.content();
  std::vector<Int> c = p.coeffs();
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
  std::vector<IntPolynomial> chain{p, reduce_positive(p.derivative())};
  while (chain.back().degree() > 0) {
    const IntPolynomial& a = chain[chain.size() - 2];
    const IntPolynomial& b = chain.back();
    IntPolynomial r = pseudo_remainder(a, b);
    // prem = lc(b)^k * a - q b; the Sturm step wants -(a mod b).
    int k = a.degree() - b.degree() + 1;
    bool flip = !(b.leading() < 0 && k % 2 == 1);
    if (r.is_zero()) break;
    r = reduce_positive(r);
    chain.push_back(flip ? -r : r);
  }
  return chain;
}

int variations(const std::vector<IntPolynomial>& chain, const Rat& x) {
  int count = 0, last = 0;
  for (const auto& s : chain) {
    int sg = s.sign_at(x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

Int cauchy_bound(const IntPolynomial& p) {
  Int lead = abs(p.leading());
  Int m(0);
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Int(abs(p.coeffs()[static_cast<size_t>(i)])));
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), m.get_mpz_t(), lead.get_mpz_t());
  return q + 1;
}

}  // namespace

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree part of 0");
  if (p.degree() <= 0) return IntPolynomial{1};
  IntPolynomial g = gcd(p, p.derivative());
  return exact_quotient(p.primitive_part(), g).primitive_part();
}

int count_roots(const IntPolynomial& p, const Rat& a, const Rat& b) {
  IntPolynomial s = squarefree_part(p);
  if (s.degree() <= 0 || a >= b) return 0;
  auto chain = sturm_chain(s);
  return variations(chain, a) - variations(chain, b);
}

Enclosure refine_root(const IntPolynomial& sqfree, const Enclosure& isolating, long precision) {
  if (isolating.is_point()) return isolating;
  Rat lo = isolating.lo(), hi = isolating.hi();
  int slo = sqfree.sign_at(lo), shi = sqfree.sign_at(hi);
  if (slo == 0) return Enclosure(lo);
  if (shi == 0) return Enclosure(hi);
  if (slo == shi) throw Error(ErrorCode::InvalidArgument, "refine_root: enclosure does not bracket a sign change");
  const Rat target = pow2(-precision);
  while (hi - lo > target) {
    Rat mid = (lo + hi) / 2;
    int sm = sqfree.sign_at(mid);
    if (sm == 0) return Enclosure(mid);
    if (sm == slo) lo = mid; else hi = mid;
  }
  return Enclosure(lo, hi);
}

std::vector<Enclosure> real_roots(const IntPolynomial& p, long precision) {
  IntPolynomial s = squarefree_part(p);
  std::vector<Enclosure> out;
  if (s.degree() <= 0) return out;
  auto chain = sturm_chain(s);
  Rat bound(cauchy_bound(s));

  struct Span {
    Rat a, b;
    int n;
  };
  std::vector<Span> stack;
  int total = variations(chain, -bound) - variations(chain, bound);
  if (total > 0) stack.push_back({-bound, bound, total});
  std::vector<Span> isolated;
  while (!stack.empty()) {
    Span sp = stack.back();
    stack.pop_back();
    if (sp.n == 1) {
      isolated.push_back(sp);
      continue;
    }
    Rat mid = (sp.a + sp.b) / 2;
    int left = variations(chain, sp.a) - variations(chain, mid);
    int right = sp.n - left;
    // push right first so the left half is processed first
    if (right > 0) stack.push_back({mid, sp.b, right});
    if (left > 0) stack.push_back({sp.a, mid, left});
  }
  std::sort(isolated.begin(), isolated.end(), [](const Span& x, const Span& y) { return x.a < y.a; });

  for (auto& sp : isolated) {
    // The root lies in (a, b]. Shrink until both endpoints are non-roots.
    if (s.sign_at(sp.b) == 0) {
      out.emplace_back(sp.b);
      continue;
    }
    bool exact = false;
    while (s.sign_at(sp.a) == 0) {
      Rat mid = (sp.a + sp.b) / 2;
      if (variations(chain, sp.a) - variations(chain, mid) == 1) {
        sp.b = mid;
        if (s.sign_at(mid) == 0) {
          exact = true;
          break;
        }
      } else {
        sp.a = mid;
      }
    }
    if (exact) {
      out.emplace_back(sp.b);
      continue;
    }
    out.push_back(refine_root(s, Enclosure(sp.a, sp.b), precision));
  }
  return out;
}

}  // namespace dioph
