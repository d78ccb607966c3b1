#pragma once

#include <utility>

#include "confocal/interval.hpp"
#include "confocal/rational.hpp"

namespace confocal {

// Three-valued sign, always exact.
enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_from_int(int s) {
  return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}
inline int to_int(Sign s) { return static_cast<int>(s); }
inline Sign operator-(Sign s) { return sign_from_int(-to_int(s)); }

inline Sign sign_exact(const Rational& x) { return sign_from_int(sign_of(x)); }

// Filter telemetry, per thread. Useful in benchmarks and tests; not part of
// any predicate's contract.
struct FilterStats {
  static thread_local unsigned long interval_decided;
  static thread_local unsigned long rational_fallback;
  static void reset() { interval_decided = rational_fallback = 0; }
};

/// Dynamic filtering: evaluate the expression in interval arithmetic first;
/// if the enclosure excludes zero its sign is exact. Otherwise re-evaluate
/// with rational arithmetic. The result is always the exact sign.
template <class IntervalFn, class RationalFn>
Sign sign_filtered(IntervalFn&& approx, RationalFn&& exact) {
  const Interval v = std::forward<IntervalFn>(approx)();
  if (v.is_positive()) {
    ++FilterStats::interval_decided;
    return Sign::Positive;
  }
  if (v.is_negative()) {
    ++FilterStats::interval_decided;
    return Sign::Negative;
  }
  ++FilterStats::rational_fallback;
  return sign_exact(std::forward<RationalFn>(exact)());
}

}  // namespace confocal
