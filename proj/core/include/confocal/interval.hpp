#pragma once

#include <cmath>
#include <limits>

namespace confocal {

namespace interval_detail {
inline double down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
}  // namespace interval_detail

// Closed interval [lo, hi] with hardware doubles. Operations round the
// result outward by one ulp on each side, so the interval of an expression
// always encloses its exact value. Non-finite intermediates collapse to the
// whole line, which keeps enclosures valid.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  constexpr Interval(double l, double h) : lo(l), hi(h) {}
  explicit constexpr Interval(double x) : lo(x), hi(x) {}

  static constexpr Interval whole() {
    return Interval{-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
  }

  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool is_positive() const { return lo > 0.0; }
  bool is_negative() const { return hi < 0.0; }
  bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }

  Interval operator-() const { return Interval{-hi, -lo}; }
};

/// True iff lo <= 0 <= hi.
inline bool interval_contains_zero(const Interval& v) { return v.contains_zero(); }

inline Interval operator+(const Interval& a, const Interval& b) {
  using namespace interval_detail;
  Interval r{down(a.lo + b.lo), up(a.hi + b.hi)};
  if (std::isnan(r.lo) || std::isnan(r.hi)) return Interval::whole();
  return r;
}

inline Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

inline Interval operator*(const Interval& a, const Interval& b) {
  using namespace interval_detail;
  if (!a.is_finite() || !b.is_finite()) return Interval::whole();
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  const double mn = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
  const double mx = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
  return Interval{down(mn), up(mx)};
}

inline Interval operator/(const Interval& a, const Interval& b) {
  using namespace interval_detail;
  if (!a.is_finite() || !b.is_finite() || b.contains_zero()) return Interval::whole();
  const double q1 = a.lo / b.lo, q2 = a.lo / b.hi, q3 = a.hi / b.lo, q4 = a.hi / b.hi;
  const double mn = std::fmin(std::fmin(q1, q2), std::fmin(q3, q4));
  const double mx = std::fmax(std::fmax(q1, q2), std::fmax(q3, q4));
  return Interval{down(mn), up(mx)};
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

inline Interval square(const Interval& v) {
  using namespace interval_detail;
  if (!v.is_finite()) return Interval::whole();
  if (v.lo >= 0.0) return Interval{down(v.lo * v.lo), up(v.hi * v.hi)};
  if (v.hi <= 0.0) return Interval{down(v.hi * v.hi), up(v.lo * v.lo)};
  const double m = std::fmax(-v.lo, v.hi);
  return Interval{0.0, up(m * m)};
}

}  // namespace confocal
