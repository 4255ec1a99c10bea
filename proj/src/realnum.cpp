#include "dioph/realnum.hpp"

#include "dioph/decimal.hpp"
#include "dioph/errors.hpp"
#include "dioph/roots.hpp"

#include <mutex>
#include <sstream>

namespace dioph {

std::string_view to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::Rational: return "Rational";
    case TargetKind::AlgebraicRoot: return "AlgebraicRoot";
    case TargetKind::ContinuedFraction: return "ContinuedFraction";
    case TargetKind::FibonacciWordCF: return "FibonacciWordCF";
    case TargetKind::LiouvilleSeries: return "LiouvilleSeries";
    case TargetKind::DigitStream: return "DigitStream";
  }
  return "?";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace detail {

class TargetImpl {
 public:
  TargetImpl(TargetKind kind, std::string spec) : kind_(kind), spec_(std::move(spec)) {}
  virtual ~TargetImpl() = default;

  TargetKind kind() const { return kind_; }
  const std::string& spec() const { return spec_; }

  virtual Enclosure eval(long precision) const = 0;
  virtual std::optional<Rat> rational_value() const { return std::nullopt; }
  virtual std::optional<IntPolynomial> minimal_polynomial() const { return std::nullopt; }
  virtual bool transcendental() const { return true; }
  virtual Int cf_term(std::size_t) const {
    throw Error(ErrorCode::UnsupportedKind, std::string(to_string(kind_)) + " has no continued-fraction terms");
  }

 private:
  TargetKind kind_;
  std::string spec_;
};

namespace {

void check_precision(long precision) {
  if (precision < 1) throw Error(ErrorCode::InvalidArgument, "precision must be >= 1");
}

class RationalImpl final : public TargetImpl {
 public:
  explicit RationalImpl(const Rat& v) : TargetImpl(TargetKind::Rational, "rational:" + v.get_str()), value_(v) {}
  Enclosure eval(long precision) const override {
    check_precision(precision);
    return Enclosure(value_).rounded(precision + 1);
  }
  std::optional<Rat> rational_value() const override { return value_; }
  std::optional<IntPolynomial> minimal_polynomial() const override {
    return IntPolynomial(std::vector<Int>{-value_.get_num(), value_.get_den()});
  }
  bool transcendental() const override { return false; }

 private:
  Rat value_;
};

class AlgebraicImpl final : public TargetImpl {
 public:
  AlgebraicImpl(IntPolynomial m, int index, std::string spec)
      : TargetImpl(TargetKind::AlgebraicRoot, std::move(spec)), minpoly_(std::move(m)) {
    auto roots = real_roots(minpoly_, 8);
    if (index < 0 || index >= static_cast<int>(roots.size()))
      throw Error(ErrorCode::InvalidArgument, "root index " + std::to_string(index) + " out of range; " +
                                                  std::to_string(roots.size()) + " real roots");
    best_ = roots[static_cast<size_t>(index)];
  }
  Enclosure eval(long precision) const override {
    check_precision(precision);
    std::lock_guard lock(mu_);
    if (best_.width() > pow2(-precision)) best_ = refine_root(minpoly_, best_, precision);
    return best_;
  }
  std::optional<Rat> rational_value() const override {
    if (minpoly_.degree() == 1) return Rat(-minpoly_.coeff(0), minpoly_.coeff(1));
    return std::nullopt;
  }
  std::optional<IntPolynomial> minimal_polynomial() const override { return minpoly_; }
  bool transcendental() const override { return false; }

 private:
  IntPolynomial minpoly_;
  mutable std::mutex mu_;
  mutable Enclosure best_;
};

// Continued fractions: memoized terms and convergents.
class CfImpl : public TargetImpl {
 public:
  CfImpl(TargetKind kind, TermGenerator gen, std::string spec, std::optional<Rat> exact = std::nullopt)
      : TargetImpl(kind, std::move(spec)), gen_(std::move(gen)), exact_(std::move(exact)) {}

  std::optional<Rat> rational_value() const override { return exact_; }
  std::optional<IntPolynomial> minimal_polynomial() const override {
    if (!exact_) return std::nullopt;
    return IntPolynomial(std::vector<Int>{-exact_->get_num(), exact_->get_den()});
  }
  bool transcendental() const override { return !exact_; }

  Int cf_term(std::size_t k) const override {
    std::lock_guard lock(mu_);
    extend(k + 1);
    return terms_[k];
  }

  Rat convergent(std::size_t k) const {
    std::lock_guard lock(mu_);
    extend(k + 1);
    return Rat(p_[k], q_[k]);
  }

  Enclosure eval(long precision) const override {
    check_precision(precision);
    if (exact_) return Enclosure(*exact_).rounded(precision + 1);
    std::lock_guard lock(mu_);
    const Rat target = pow2(-(precision + 2));
    for (std::size_t k = 0;; ++k) {
      extend(k + 2);
      Rat gap(Int(1), q_[k] * q_[k + 1]);
      if (gap <= target) {
        Rat a(p_[k], q_[k]), b(p_[k + 1], q_[k + 1]);
        return hull(Enclosure(a), Enclosure(b)).rounded(precision + 2);
      }
    }
  }

 private:
  void extend(std::size_t n) const {
    while (terms_.size() < n) {
      std::size_t k = terms_.size();
      auto t = gen_(k);
      if (!t) throw Error(ErrorCode::GeneratorExhausted, "continued fraction ran out at term " + std::to_string(k));
      if (k >= 1 && *t < 1) throw Error(ErrorCode::InvalidArgument, "partial quotients must be >= 1");
      terms_.push_back(*t);
      if (k == 0) {
        p_.push_back(*t);
        q_.push_back(Int(1));
      } else if (k == 1) {
        p_.push_back(*t * p_[0] + 1);
        q_.push_back(*t);
      } else {
        p_.push_back(*t * p_[k - 1] + p_[k - 2]);
        q_.push_back(*t * q_[k - 1] + q_[k - 2]);
      }
    }
  }

  TermGenerator gen_;
  std::optional<Rat> exact_;
  mutable std::mutex mu_;
  mutable std::vector<Int> terms_, p_, q_;
};

class LiouvilleImpl final : public TargetImpl {
 public:
  LiouvilleImpl(long base, TermGenerator exps, std::string spec)
      : TargetImpl(TargetKind::LiouvilleSeries, std::move(spec)), base_(base), exps_(std::move(exps)) {
    if (base < 2) throw Error(ErrorCode::InvalidArgument, "Liouville base must be >= 2");
  }

  Int exponent(std::size_t k) const {
    std::lock_guard lock(mu_);
    extend(k);
    return e_[k - 1];
  }

  long base() const { return base_; }

  // sum_{j<=k} base^(-e_j)
  Rat partial_sum(std::size_t k) const {
    Rat s(0);
    for (std::size_t j = 1; j <= k; ++j) s += power_inverse(exponent(j));
    return s;
  }

  Rat power_inverse(const Int& e) const {
    if (!e.fits_ulong_p()) throw Error(ErrorCode::OverflowGuard, "Liouville exponent too large");
    Int g;
    mpz_ui_pow_ui(g.get_mpz_t(), static_cast<unsigned long>(base_), e.get_ui());
    return Rat(Int(1), g);
  }

  Enclosure eval(long precision) const override {
    check_precision(precision);
    const Rat target = pow2(-(precision + 2));
    Rat s(0);
    for (std::size_t k = 1;; ++k) {
      s += power_inverse(exponent(k));
      Rat tail = 2 * power_inverse(exponent(k + 1));
      if (tail <= target) return Enclosure(s, s + tail).rounded(precision + 2);
    }
  }

 private:
  void extend(std::size_t k) const {
    while (e_.size() < k) {
      std::size_t idx = e_.size() + 1;
      auto t = exps_(idx);
      if (!t) throw Error(ErrorCode::GeneratorExhausted, "Liouville exponents ran out at k = " + std::to_string(idx));
      if (*t < 1 || (!e_.empty() && *t <= e_.back()))
        throw Error(ErrorCode::InvalidArgument, "Liouville exponents must be positive and strictly increasing");
      e_.push_back(*t);
    }
  }

  long base_;
  TermGenerator exps_;
  mutable std::mutex mu_;
  mutable std::vector<Int> e_;
};

class DigitsImpl final : public TargetImpl {
 public:
  explicit DigitsImpl(std::uint64_t seed)
      : TargetImpl(TargetKind::DigitStream, "digits:seed=" + std::to_string(seed)), seed_(seed) {}

  int digit(std::uint64_t k) const {
    // rejection keeps digits uniform
    for (std::uint64_t attempt = 0;; ++attempt) {
      std::uint64_t r = splitmix64(seed_ ^ splitmix64(k * 0x100000001b3ULL + attempt));
      if (r < 18446744073709551610ULL) return static_cast<int>(r % 10);
    }
  }

  Enclosure eval(long precision) const override {
    check_precision(precision);
    // 10^-K <= 2^-(precision+2)
    std::uint64_t digits = static_cast<std::uint64_t>((precision + 2) * 0.30103) + 2;
    Int num(0);
    for (std::uint64_t k = 1; k <= digits; ++k) num = num * 10 + digit(k);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, digits);
    Rat s(num, den);
    s.canonicalize();
    return Enclosure(s, s + Rat(Int(1), den)).rounded(precision + 2);
  }

 private:
  std::uint64_t seed_;
};

std::string join_ints(const std::vector<Int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s;
}

}  // namespace
}  // namespace detail

RealTarget::RealTarget(std::shared_ptr<detail::TargetImpl> impl, std::string label)
    : impl_(std::move(impl)), label_(std::move(label)) {}

RealTarget RealTarget::rational(const Rat& value) {
  Rat v = value;
  v.canonicalize();
  auto impl = std::make_shared<detail::RationalImpl>(v);
  return RealTarget(impl, impl->spec());
}

RealTarget RealTarget::algebraic_root(const IntPolynomial& minimal_polynomial, int index) {
  IntPolynomial m = minimal_polynomial.canonical();
  if (m.degree() < 1) throw Error(ErrorCode::InvalidArgument, "minimal polynomial must have degree >= 1");
  if (m.degree() > 4) throw Error(ErrorCode::DegreeTooLarge, "irreducibility is certified only up to degree 4");
  if (!is_minimal_polynomial(m))
    throw Error(ErrorCode::InvalidArgument, m.to_string() + " is not irreducible and primitive");
  std::string spec = "algroot:" + m.to_string() + ":" + std::to_string(index);
  auto impl = std::make_shared<detail::AlgebraicImpl>(m, index, spec);
  return RealTarget(impl, spec);
}

RealTarget RealTarget::continued_fraction(TermGenerator terms, std::string spec) {
  auto impl = std::make_shared<detail::CfImpl>(TargetKind::ContinuedFraction, std::move(terms), spec);
  return RealTarget(impl, spec);
}

RealTarget RealTarget::periodic_continued_fraction(std::vector<Int> prefix, std::vector<Int> period) {
  if (prefix.empty()) throw Error(ErrorCode::InvalidArgument, "continued fraction needs an integer part");
  for (size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i] < 1) throw Error(ErrorCode::InvalidArgument, "partial quotients must be >= 1");
  for (const auto& t : period)
    if (t < 1) throw Error(ErrorCode::InvalidArgument, "partial quotients must be >= 1");
  std::string spec = "cf:" + detail::join_ints(prefix);
  if (!period.empty()) spec += ";" + detail::join_ints(period);
  TermGenerator gen = [prefix, period](std::size_t k) -> std::optional<Int> {
    if (k < prefix.size()) return prefix[k];
    if (period.empty()) return std::nullopt;
    return period[(k - prefix.size()) % period.size()];
  };
  std::optional<Rat> exact;
  if (period.empty()) {
    Rat v(prefix.back());
    for (size_t i = prefix.size() - 1; i-- > 0;) v = prefix[i] + 1 / v;
    exact = v;
  }
  auto impl = std::make_shared<detail::CfImpl>(TargetKind::ContinuedFraction, std::move(gen), spec, exact);
  return RealTarget(impl, spec);
}

RealTarget RealTarget::fibonacci_word_cf(long a, long b) {
  if (a < 1 || b < 1 || a == b) throw Error(ErrorCode::InvalidArgument, "extremal needs distinct positive a, b");
  struct Word {
    std::mutex mu;
    std::vector<long> letters;
  };
  auto word = std::make_shared<Word>();
  TermGenerator gen = [word, a, b](std::size_t k) -> std::optional<Int> {
    if (k == 0) return Int(0);
    std::lock_guard lock(word->mu);
    if (word->letters.size() < k) word->letters = fibonacci_word_prefix(a, b, std::max<std::size_t>(k, 2 * word->letters.size()));
    return Int(word->letters[k - 1]);
  };
  std::string spec = "extremal:" + std::to_string(a) + "," + std::to_string(b);
  auto impl = std::make_shared<detail::CfImpl>(TargetKind::FibonacciWordCF, std::move(gen), spec);
  return RealTarget(impl, spec);
}

RealTarget RealTarget::liouville(long base, TermGenerator exponents, std::string exponent_spec) {
  std::string spec = "liouville:" + std::to_string(base) + ":" + exponent_spec;
  auto impl = std::make_shared<detail::LiouvilleImpl>(base, std::move(exponents), spec);
  return RealTarget(impl, spec);
}

RealTarget RealTarget::liouville_factorial(long base) {
  TermGenerator gen = [](std::size_t k) -> std::optional<Int> {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
  };
  return liouville(base, std::move(gen), "factorial");
}

RealTarget RealTarget::digits(std::uint64_t seed) {
  auto impl = std::make_shared<detail::DigitsImpl>(seed);
  return RealTarget(impl, impl->spec());
}

TargetKind RealTarget::kind() const { return impl_->kind(); }
const std::string& RealTarget::spec() const { return impl_->spec(); }
const std::string& RealTarget::label() const { return label_; }

RealTarget RealTarget::with_label(std::string label) const { return RealTarget(impl_, std::move(label)); }

Enclosure RealTarget::eval(long precision) const { return impl_->eval(precision); }
std::optional<Rat> RealTarget::rational_value() const { return impl_->rational_value(); }
std::optional<IntPolynomial> RealTarget::minimal_polynomial() const { return impl_->minimal_polynomial(); }
bool RealTarget::transcendental() const { return impl_->transcendental(); }
Int RealTarget::cf_term(std::size_t k) const { return impl_->cf_term(k); }

Int RealTarget::liouville_exponent(std::size_t k) const {
  auto* l = dynamic_cast<const detail::LiouvilleImpl*>(impl_.get());
  if (!l) throw Error(ErrorCode::UnsupportedKind, "not a Liouville series");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "Liouville exponents are indexed from 1");
  return l->exponent(k);
}

long RealTarget::liouville_base() const {
  auto* l = dynamic_cast<const detail::LiouvilleImpl*>(impl_.get());
  if (!l) throw Error(ErrorCode::UnsupportedKind, "not a Liouville series");
  return l->base();
}

Rat RealTarget::magnitude_bound() const { return eval(16).mag(); }

std::vector<long> fibonacci_word_prefix(long a, long b, std::size_t length) {
  if (length < 1) throw Error(ErrorCode::InvalidArgument, "length must be >= 1");
  std::vector<long> prev{a}, cur{a, b};
  if (length == 1) return prev;
  while (cur.size() < length) {
    std::vector<long> next = cur;
    next.insert(next.end(), prev.begin(), prev.end());
    prev = std::move(cur);
    cur = std::move(next);
  }
  cur.resize(length);
  return cur;
}

Rat convergent(const RealTarget& target, std::size_t k) {
  switch (target.kind()) {
    case TargetKind::Rational: return *target.rational_value();
    case TargetKind::ContinuedFraction:
    case TargetKind::FibonacciWordCF: {
      Int p0(1), q0(0), p1 = target.cf_term(0), q1(1);
      for (std::size_t i = 1; i <= k; ++i) {
        Int a = target.cf_term(i);
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
      }
      return Rat(p1, q1);
    }
    case TargetKind::LiouvilleSeries: {
      if (k < 1) throw Error(ErrorCode::InvalidArgument, "Liouville partial sums start at k = 1");
      Rat s(0);
      for (std::size_t j = 1; j <= k; ++j) {
        Int e = target.liouville_exponent(j);
        Int g;
        mpz_ui_pow_ui(g.get_mpz_t(), static_cast<unsigned long>(target.liouville_base()), e.get_ui());
        s += Rat(Int(1), g);
      }
      s.canonicalize();
      return s;
    }
    default:
      throw Error(ErrorCode::UnsupportedKind, "no convergents for " + std::string(to_string(target.kind())));
  }
}

std::vector<Int> continued_fraction_of(const Enclosure& e) {
  std::vector<Int> out;
  Rat lo = e.lo(), hi = e.hi();
  for (;;) {
    Int a = floor_rat(lo);
    if (floor_rat(hi) != a) break;
    out.push_back(a);
    Rat flo = lo - a, fhi = hi - a;
    if (flo == 0) break;
    lo = 1 / fhi;
    hi = 1 / flo;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<Int> parse_int_list(const std::string& s, const std::string& context) {
  std::vector<Int> out;
  for (const auto& item : split(s, ',')) {
    try {
      out.emplace_back(item, 10);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ParseError, "bad integer '" + item + "' in " + context);
    }
  }
  return out;
}

long parse_long(const std::string& s, const std::string& context) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad integer '" + s + "' in " + context);
  }
}

}  // namespace

RealTarget parse_target(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "target needs 'kind:args': '" + raw + "'");
  std::string kind = text.substr(0, colon), args = text.substr(colon + 1);

  if (kind == "rational") return RealTarget::rational(parse_rational(args));
  if (kind == "algroot") {
    auto close = args.find(']');
    if (close == std::string::npos || close + 1 >= args.size() || args[close + 1] != ':')
      throw Error(ErrorCode::ParseError, "algroot needs [coeffs]:index: '" + raw + "'");
    IntPolynomial m = parse_polynomial(args.substr(0, close + 1));
    int index = static_cast<int>(parse_long(args.substr(close + 2), raw));
    return RealTarget::algebraic_root(m, index);
  }
  if (kind == "extremal") {
    auto parts = split(args, ',');
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "extremal needs a,b: '" + raw + "'");
    return RealTarget::fibonacci_word_cf(parse_long(parts[0], raw), parse_long(parts[1], raw));
  }
  if (kind == "liouville") {
    auto c2 = args.find(':');
    if (c2 == std::string::npos) throw Error(ErrorCode::ParseError, "liouville needs base:exponents: '" + raw + "'");
    long base = parse_long(args.substr(0, c2), raw);
    std::string exps = args.substr(c2 + 1);
    if (exps == "factorial") return RealTarget::liouville_factorial(base);
    auto list = parse_int_list(exps, raw);
    if (list.empty()) throw Error(ErrorCode::ParseError, "empty exponent list: '" + raw + "'");
    TermGenerator gen = [list](std::size_t k) -> std::optional<Int> {
      if (k < 1 || k > list.size()) return std::nullopt;
      return list[k - 1];
    };
    return RealTarget::liouville(base, std::move(gen), detail::join_ints(list));
  }
  if (kind == "digits") {
    if (args.rfind("seed=", 0) != 0) throw Error(ErrorCode::ParseError, "digits needs seed=N: '" + raw + "'");
    try {
      return RealTarget::digits(std::stoull(args.substr(5)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad seed in '" + raw + "'");
    }
  }
  if (kind == "cf") {
    auto semi = args.find(';');
    std::vector<Int> prefix = parse_int_list(args.substr(0, semi), raw);
    std::vector<Int> period;
    if (semi != std::string::npos) period = parse_int_list(args.substr(semi + 1), raw);
    return RealTarget::periodic_continued_fraction(std::move(prefix), std::move(period));
  }
  throw Error(ErrorCode::ParseError, "unknown target kind '" + kind + "'");
}

}  // namespace dioph
