#include "certicurve/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "certicurve/errors.hpp"

namespace certicurve {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Integer read_integer(std::string_view s) {
  if (!valid_integer(s)) throw ParseError("malformed integer '" + std::string(s) + "'");
  std::string t(s[0] == '+' ? s.substr(1) : s);
  return Integer(t, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Integer num = read_integer(text.substr(0, slash));
    Integer den = read_integer(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  auto dot = text.find_first_of(".eE");
  if (dot == std::string_view::npos) return Rational(read_integer(text));
  // decimal with optional exponent
  std::string_view mant = text;
  long exp10 = 0;
  auto e = text.find_first_of("eE");
  if (e != std::string_view::npos) {
    mant = text.substr(0, e);
    std::string_view es = text.substr(e + 1);
    if (!valid_integer(es)) throw ParseError("malformed exponent in '" + std::string(text) + "'");
    exp10 = std::stol(std::string(es));
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (char ch : mant) {
    if (ch == '.') {
      if (seen_dot) throw ParseError("malformed decimal '" + std::string(text) + "'");
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_dot) ++frac;
    } else {
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw ParseError("malformed decimal '" + std::string(text) + "'");
  Integer num(digits, 10);
  long shift = exp10 - frac;
  Integer ten = 10;
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(shift)));
  Rational q = shift >= 0 ? Rational(num * scale) : Rational(num, scale);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value cannot be made rational");
  Rational q(x);
  return q;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow(const Rational& q, unsigned k) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), k);
  r.canonicalize();
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::size_t bit_size(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  if (lo_in > hi_in) throw std::invalid_argument("simplest_between: empty interval");
  if (lo_in <= 0 && hi_in >= 0) return Rational(0);
  if (hi_in < 0) return Rational(-simplest_between(-hi_in, -lo_in));
  // continued fraction walk on 0 < lo <= hi
  Rational lo = lo_in, hi = hi_in;
  // convergent bookkeeping: value = (p_prev + p*x)/(q_prev + q*x) style
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (;;) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    Rational flq(fl);
    if (flq == lo || flq + 1 <= hi) {
      Integer a = (flq == lo) ? fl : Integer(fl + 1);
      Integer p = a * p1 + p0, q = a * q1 + q0;
      Rational r(p, q);
      r.canonicalize();
      return r;
    }
    Integer p = fl * p1 + p0, q = fl * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p;
    q1 = q;
    Rational nlo = 1 / (hi - flq);
    Rational nhi = 1 / (lo - flq);
    lo = nlo;
    hi = nhi;
  }
}

}  // namespace certicurve
