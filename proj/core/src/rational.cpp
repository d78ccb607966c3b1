#include "confocal/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "confocal/filtered.hpp"

namespace confocal {

thread_local unsigned long FilterStats::interval_decided = 0;
thread_local unsigned long FilterStats::rational_fallback = 0;

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational pow10(long e) {
  Rational ten(10);
  Rational r(1);
  bool inv = e < 0;
  for (long k = 0; k < (inv ? -e : e); ++k) r *= ten;
  return inv ? Rational(1) / r : r;
}

}  // namespace

Rational rational_from_string(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  };

  std::string s(text);
  if (s.empty()) fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    bool nneg = !num.empty() && (num[0] == '-' || num[0] == '+');
    if (!all_digits(nneg ? num.substr(1) : num) || !all_digits(den)) fail();
    Rational r;
    if (mpq_set_str(r.backend().data(), (num + "/" + den).c_str(), 10) != 0) fail();
    if (mpz_sgn(mpq_denref(r.backend().data())) == 0) fail();
    mpq_canonicalize(r.backend().data());
    return r;
  }

  // Decimal form [sign] digits [. digits] [eE [sign] digits], parsed exactly.
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string int_part, frac_part;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) int_part += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) frac_part += s[pos++];
  }
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
    std::string es;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) es += s[pos++];
    if (es.empty()) fail();
    exp10 = std::stol(es);
    if (eneg) exp10 = -exp10;
  }
  if (pos != s.size() || (int_part.empty() && frac_part.empty())) fail();

  std::string digits = int_part + frac_part;
  if (digits.empty()) fail();
  Rational mant;
  mpq_set_str(mant.backend().data(), digits.c_str(), 10);
  Rational r = mant * pow10(exp10 - static_cast<long>(frac_part.size()));
  return neg ? -r : r;
}

std::string rational_to_string(const Rational& x) { return x.str(); }

bool rational_is_square(const Rational& x, Rational* root) {
  if (sign_of(x) < 0) return false;
  const mpq_srcptr q = x.backend().data();
  if (!mpz_perfect_square_p(mpq_numref(q)) || !mpz_perfect_square_p(mpq_denref(q))) return false;
  if (root) {
    Rational r;
    mpz_sqrt(mpq_numref(r.backend().data()), mpq_numref(q));
    mpz_sqrt(mpq_denref(r.backend().data()), mpq_denref(q));
    mpq_canonicalize(r.backend().data());
    *root = r;
  }
  return true;
}

Rational rational_round_dyadic(double x, int bits) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  if (x == 0.0) return Rational(0);
  const int e = std::ilogb(x);
  const double scale = std::ldexp(1.0, bits - 1 - e);
  const double scaled = std::nearbyint(x * scale);
  Rational r(scaled);  // exact: scaled is an integer-valued double
  const int k = bits - 1 - e;
  Rational pow2(1);
  const Rational two(2);
  for (int i = 0; i < (k > 0 ? k : -k); ++i) pow2 *= two;
  return k >= 0 ? r / pow2 : r * pow2;
}

Rational rational_exp(double x, int bits) {
  mpfr_t v;
  mpfr_init2(v, bits);
  mpfr_set_d(v, x, MPFR_RNDN);
  mpfr_exp(v, v, MPFR_RNDN);
  mpz_t m;
  mpz_init(m);
  const mpfr_exp_t e = mpfr_get_z_2exp(m, v);
  Rational r;
  mpq_set_z(r.backend().data(), m);
  mpz_clear(m);
  mpfr_clear(v);
  Rational two(2);
  Rational p(1);
  for (long i = 0; i < (e > 0 ? e : -e); ++i) p *= two;
  return e >= 0 ? r * p : r / p;
}

Rational rational_sqrt_upper_bound(const Rational& x) {
  if (sign_of(x) < 0) throw std::invalid_argument("negative argument");
  if (sign_of(x) == 0) return Rational(0);
  // start from the double approximation, then certify by squaring
  double d = std::sqrt(to_double(x));
  Rational b = rational_round_dyadic(d * (1.0 + 1e-9) + 1e-300, 64);
  while (b * b < x) b *= Rational(2);
  return b;
}

}  // namespace confocal
