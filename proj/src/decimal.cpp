#include "dioph/decimal.hpp"

#include "dioph/errors.hpp"

#include <cctype>

namespace dioph {

namespace {

Int pow10(long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

Rat pow10_rat(long e) { return e >= 0 ? Rat(pow10(e)) : Rat(Int(1), pow10(-e)); }

// floor(log10 |x|), x != 0.
long ilog10(const Rat& x) {
  Rat a = abs(x);
  long e = static_cast<long>(static_cast<double>(ilog2(a)) * 0.30102999566398120);
  while (pow10_rat(e) > a) --e;
  while (pow10_rat(e + 1) <= a) ++e;
  return e;
}

}  // namespace

std::string format_decimal(const Rat& x, int digits, Rounding mode) {
  if (sgn(x) == 0) return "0";
  if (digits < 1) throw Error(ErrorCode::InvalidArgument, "digits must be >= 1");
  long e = ilog10(x);
  Rat scaled = x * pow10_rat(digits - 1 - e);
  Int m;
  switch (mode) {
    case Rounding::Down: m = floor_rat(scaled); break;
    case Rounding::Up: m = ceil_rat(scaled); break;
    case Rounding::Nearest: m = floor_rat(scaled + Rat(1, 2)); break;
  }
  Int am = abs(m);
  // Rounding may carry into a new decade (9.99 -> 10.0).
  if (am == pow10(digits)) {
    am /= 10;
    ++e;
  }
  std::string s = am.get_str();
  std::string out;
  if (sgn(m) < 0) out += '-';
  out += s[0];
  if (s.size() > 1) {
    out += '.';
    out += s.substr(1);
  }
  out += 'e';
  out += (e < 0 ? '-' : '+');
  std::string es = std::to_string(e < 0 ? -e : e);
  if (es.size() < 2) es = "0" + es;
  out += es;
  return out;
}

Rat parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error(ErrorCode::ParseError, "empty number");
  try {
    if (auto slash = t.find('/'); slash != std::string::npos) {
      Int num(t.substr(0, slash), 10);
      Int den(t.substr(slash + 1), 10);
      if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    long exp10 = 0;
    if (auto epos = t.find_first_of("eE"); epos != std::string::npos) {
      exp10 = std::stol(t.substr(epos + 1));
      t = t.substr(0, epos);
    }
    bool neg = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
      neg = t[0] == '-';
      t = t.substr(1);
    }
    std::string digits;
    long frac = 0;
    bool seen_dot = false;
    for (char c : t) {
      if (c == '.') {
        if (seen_dot) throw Error(ErrorCode::ParseError, "bad number '" + text + "'");
        seen_dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_dot) ++frac;
      } else {
        throw Error(ErrorCode::ParseError, "bad number '" + text + "'");
      }
    }
    if (digits.empty()) throw Error(ErrorCode::ParseError, "bad number '" + text + "'");
    Rat r(Int(digits, 10));
    r *= pow10_rat(exp10 - frac);
    return neg ? Rat(-r) : r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "bad number '" + text + "'");
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::ParseError, "bad number '" + text + "'");
  }
}

}  // namespace dioph
