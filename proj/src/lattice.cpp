#include "dioph/lattice.hpp"

#include "dioph/errors.hpp"

namespace dioph {

Int squared_norm(const IntVector& v) {
  Int s(0);
  for (const auto& x : v) s += x * x;
  return s;
}

namespace {

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct GramSchmidt {
  std::vector<std::vector<Rat>> star;
  std::vector<Rat> norm2;
  std::vector<std::vector<Rat>> mu;

  explicit GramSchmidt(const std::vector<IntVector>& b) {
    const size_t n = b.size(), d = b.front().size();
    star.assign(n, std::vector<Rat>(d));
    norm2.assign(n, Rat(0));
    mu.assign(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
      std::vector<Rat> bi(d);
      for (size_t k = 0; k < d; ++k) bi[k] = b[i][k];
      star[i] = bi;
      for (size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(bi, star[j]) / norm2[j];
        for (size_t k = 0; k < d; ++k) star[i][k] -= mu[i][j] * star[j][k];
      }
      norm2[i] = dot(star[i], star[i]);
      if (norm2[i] == 0) throw Error(ErrorCode::InvalidArgument, "lll_reduce: basis is linearly dependent");
    }
  }
};

}  // namespace

std::vector<IntVector> lll_reduce(std::vector<IntVector> b, const Rat& delta) {
  if (b.empty()) return b;
  const size_t n = b.size(), d = b.front().size();
  GramSchmidt gs(b);
  size_t k = 1;
  while (k < n) {
    for (size_t j = k; j-- > 0;) {
      Rat m = gs.mu[k][j];
      if (m > Rat(1, 2) || m < Rat(-1, 2)) {
        Int r = floor_rat(m + Rat(1, 2));
        for (size_t c = 0; c < d; ++c) b[k][c] -= r * b[j][c];
        for (size_t c = 0; c < j; ++c) gs.mu[k][c] -= r * gs.mu[j][c];
        gs.mu[k][j] -= r;
      }
    }
    Rat lhs = gs.norm2[k];
    Rat rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gs = GramSchmidt(b);
      k = std::max<size_t>(k - 1, 1);
    }
  }
  return b;
}

}  // namespace dioph
