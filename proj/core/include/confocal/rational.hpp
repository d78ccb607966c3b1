#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "confocal/interval.hpp"

namespace confocal {

// Arbitrary-precision rational scalar. The GMP backend keeps every value
// canonical: gcd-reduced, positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline int sign_of(const Rational& x) { return x.sign(); }

inline double to_double(const Rational& x) { return x.template convert_to<double>(); }

/// Smallest interval with double endpoints that encloses x.
inline Interval to_interval(const Rational& x) {
  const double d = to_double(x);  // mpq_get_d truncates toward zero, error < 1 ulp
  if (!std::isfinite(d)) return Interval::whole();
  return Interval{interval_detail::down(d), interval_detail::up(d)};
}

/// Parses "p/q", integers, and decimal strings ("-0.125", "2.5e-3") exactly.
/// Throws std::invalid_argument on malformed input.
Rational rational_from_string(std::string_view text);

std::string rational_to_string(const Rational& x);

/// True iff x is the square of a rational; if so and root != nullptr the
/// non-negative root is stored there.
bool rational_is_square(const Rational& x, Rational* root = nullptr);

/// Nearest rational to x of the form k / 2^bits (exact dyadic rounding).
Rational rational_round_dyadic(double x, int bits);

/// exp(x) rounded to `bits` significant bits, as an exact rational.
Rational rational_exp(double x, int bits);

/// Rational upper bound on sqrt(x) for x >= 0 (within a factor of 2).
Rational rational_sqrt_upper_bound(const Rational& x);

}  // namespace confocal
