#include "dioph/intpoly.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dioph {

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Int IntPolynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return Int(0);
  return coeffs_[static_cast<size_t>(i)];
}

const Int& IntPolynomial::leading() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of 0");
  return coeffs_.back();
}

Int IntPolynomial::height() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "height of the zero polynomial");
  Int h(0);
  for (const auto& c : coeffs_)
    if (abs(c) > h) h = abs(c);
  return h;
}

Int IntPolynomial::content() const {
  Int g(0);
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  Int g = content();
  if (leading() < 0) g = -g;
  std::vector<Int> out(coeffs_.size());
  for (size_t i = 0; i < out.size(); ++i) mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::canonical() const {
  if (is_zero() || leading() > 0) return *this;
  return -*this;
}

IntPolynomial IntPolynomial::derivative() const {
  if (degree() <= 0) return {};
  std::vector<Int> out(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(out));
}

Rat IntPolynomial::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "[0]";
  std::string s = "[";
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ',';
    s += coeffs_[i].get_str();
  }
  return s + "]";
}

std::string IntPolynomial::pretty() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    Int a = abs(c);
    if (!s.empty() || c < 0) s += (c < 0 ? "-" : "+");
    if (a != 1 || i == 0) s += a.get_str();
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Int> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a) {
  std::vector<Int> out(a.coeffs_.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = -a.coeffs_[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Int> out(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const Int& k, const IntPolynomial& a) {
  std::vector<Int> out(a.coeffs_.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = k * a.coeffs_[i];
  return IntPolynomial(std::move(out));
}

bool lex_less(const IntPolynomial& a, const IntPolynomial& b) {
  int top = std::max(a.degree(), b.degree());
  for (int i = top; i >= 0; --i) {
    Int ca = a.coeff(i), cb = b.coeff(i);
    if (ca != cb) return ca < cb;
  }
  return false;
}

IntPolynomial parse_polynomial(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw Error(ErrorCode::ParseError, "polynomial must look like [c0,c1,...]: '" + text + "'");
  std::vector<Int> coeffs;
  std::stringstream ss(t.substr(1, t.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error(ErrorCode::ParseError, "empty coefficient in '" + text + "'");
    try {
      coeffs.emplace_back(item, 10);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ParseError, "bad coefficient '" + item + "'");
    }
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "pseudo-division by 0");
  int db = b.degree();
  if (a.degree() < db) return a;
  std::vector<Int> r = a.coeffs();
  const Int& lb = b.leading();
  int steps = a.degree() - db + 1;
  int dr = a.degree();
  while (dr >= db && steps > 0) {
    Int lr = r[static_cast<size_t>(dr)];
    for (auto& c : r) c *= lb;
    for (int i = 0; i <= db; ++i) r[static_cast<size_t>(dr - db + i)] -= lr * b.coeffs()[static_cast<size_t>(i)];
    --steps;
    --dr;
    while (dr >= 0 && r[static_cast<size_t>(dr)] == 0) --dr;
  }
  // Pad the remaining multiplications so prem has its exact classical scale.
  Int scale;
  mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
  for (auto& c : r) c *= scale;
  return IntPolynomial(std::move(r));
}

IntPolynomial gcd(const IntPolynomial& p, const IntPolynomial& q) {
  IntPolynomial a = p.primitive_part();
  IntPolynomial b = q.primitive_part();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  if (b.degree() == 0) return IntPolynomial{1};
  Int g(1), h(1);
  for (;;) {
    int delta = a.degree() - b.degree();
    IntPolynomial r = pseudo_remainder(a, b);
    if (r.is_zero()) return b.primitive_part();
    if (r.degree() == 0) return IntPolynomial{1};
    Int hd;
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    Int divisor = g * hd;
    std::vector<Int> rc = r.coeffs();
    for (auto& c : rc) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    a = b;
    b = IntPolynomial(std::move(rc));
    g = a.leading();
    // h <- g^delta / h^(delta-1)
    Int gd, hd1;
    mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
    if (delta != 0) {
      mpz_pow_ui(hd1.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd1.get_mpz_t());
    }
  }
}

namespace {

// Division over Q; returns remainder and fills quotient.
std::vector<Rat> divide_rational(const IntPolynomial& p, const IntPolynomial& d, std::vector<Rat>* quotient) {
  std::vector<Rat> r(p.coeffs().begin(), p.coeffs().end());
  int dd = d.degree();
  Rat ld(d.leading());
  int dr = p.degree();
  if (quotient) quotient->assign(static_cast<size_t>(std::max(0, dr - dd + 1)), Rat(0));
  while (dr >= dd && dr >= 0) {
    Rat f = r[static_cast<size_t>(dr)] / ld;
    if (quotient) (*quotient)[static_cast<size_t>(dr - dd)] = f;
    for (int i = 0; i <= dd; ++i) r[static_cast<size_t>(dr - dd + i)] -= f * Rat(d.coeffs()[static_cast<size_t>(i)]);
    --dr;
    while (dr >= 0 && r[static_cast<size_t>(dr)] == 0) --dr;
  }
  r.resize(static_cast<size_t>(dr + 1));
  return r;
}

}  // namespace

bool divides(const IntPolynomial& d, const IntPolynomial& p) {
  if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by 0");
  if (p.is_zero()) return true;
  return divide_rational(p, d, nullptr).empty();
}

IntPolynomial exact_quotient(const IntPolynomial& p, const IntPolynomial& d) {
  if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by 0");
  std::vector<Rat> q;
  if (!divide_rational(p, d, &q).empty()) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
  std::vector<Int> out;
  out.reserve(q.size());
  for (const auto& c : q) {
    if (c.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "quotient not integral");
    out.push_back(c.get_num());
  }
  return IntPolynomial(std::move(out));
}

// ---------------------------------------------------------------------------

Int polynomial_count(int n, long height) {
  Int base(2 * height + 1), total;
  mpz_pow_ui(total.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n + 1));
  return (total - 1) / 2;
}

namespace {

void check_enumeration_args(int n, long height, std::uint64_t budget) {
  if (n < 1 || height < 1) throw Error(ErrorCode::InvalidArgument, "enumerate needs n >= 1 and H >= 1");
  if (polynomial_count(n, height) > Int(std::to_string(budget), 10))
    throw Error(ErrorCode::OverflowGuard, "enumeration of " + polynomial_count(n, height).get_str() +
                                              " polynomials exceeds budget " + std::to_string(budget));
}

// Visits canonical polynomials whose two leading coefficients (c_n, c_{n-1})
// have flattened key in [key_lo, key_hi). Returns false if stopped early.
bool visit_keys(int n, long height, long key_lo, long key_hi,
                const std::function<bool(const IntPolynomial&)>& visit) {
  const long width = 2 * height + 1;
  std::vector<long> high_first(static_cast<size_t>(n + 1));
  std::vector<Int> coeffs(static_cast<size_t>(n + 1));
  for (long key = key_lo; key < key_hi; ++key) {
    long cn = key / width - height;
    long cn1 = key % width - height;
    if (cn < 0 || (cn == 0 && cn1 < 0)) continue;
    high_first[0] = cn;
    high_first[1] = cn1;
    for (size_t i = 2; i < high_first.size(); ++i) high_first[i] = -height;
    for (;;) {
      // canonical: first nonzero coefficient (from the top) is positive
      long first = 0;
      for (long c : high_first)
        if (c != 0) {
          first = c;
          break;
        }
      if (first > 0) {
        for (int i = 0; i <= n; ++i) coeffs[static_cast<size_t>(i)] = high_first[static_cast<size_t>(n - i)];
        if (!visit(IntPolynomial(coeffs))) return false;
      }
      // odometer over positions 2..n, last position fastest
      int pos = n;
      while (pos >= 2 && high_first[static_cast<size_t>(pos)] == height) {
        high_first[static_cast<size_t>(pos)] = -height;
        --pos;
      }
      if (pos < 2) break;
      ++high_first[static_cast<size_t>(pos)];
    }
  }
  return true;
}

}  // namespace

void for_each_polynomial(int n, long height, const std::function<bool(const IntPolynomial&)>& visit,
                         std::uint64_t budget) {
  check_enumeration_args(n, height, budget);
  const long width = 2 * height + 1;
  visit_keys(n, height, 0, width * width, visit);
}

void for_each_polynomial_part(int n, long height, int part, int parts,
                              const std::function<bool(const IntPolynomial&)>& visit, std::uint64_t budget) {
  check_enumeration_args(n, height, budget);
  if (parts < 1 || part < 0 || part >= parts) throw Error(ErrorCode::InvalidArgument, "bad partition index");
  const long keys = (2 * height + 1) * (2 * height + 1);
  long lo = keys * part / parts;
  long hi = keys * (part + 1) / parts;
  visit_keys(n, height, lo, hi, visit);
}

std::vector<IntPolynomial> enumerate(int n, long height, std::uint64_t budget) {
  std::vector<IntPolynomial> out;
  for_each_polynomial(
      n, height,
      [&](const IntPolynomial& p) {
        out.push_back(p);
        return true;
      },
      budget);
  return out;
}

std::string_view to_string(ZeroStatus s) {
  switch (s) {
    case ZeroStatus::Zero: return "Zero";
    case ZeroStatus::Nonzero: return "Nonzero";
    case ZeroStatus::Unknown: return "Unknown";
  }
  return "?";
}

}  // namespace dioph
