#include "confocal/predicates.hpp"

#include <algorithm>
#include <stdexcept>

namespace confocal {

namespace {

template <class T>
struct PowerDet {
  T det;
  std::array<T, 4> cof;  // cof[k] = d(det)/d(h_k)
};

// det of the 4x4 matrix with rows (p_k - q, h_k - h_q), expanded along the
// last column so the cofactors fall out for the perturbation cascade.
template <class T>
PowerDet<T> power_det(const std::array<Vec3<T>, 4>& dp, const std::array<T, 4>& dh) {
  PowerDet<T> r;
  r.cof[0] = -det3(dp[1], dp[2], dp[3]);
  r.cof[1] = det3(dp[0], dp[2], dp[3]);
  r.cof[2] = -det3(dp[0], dp[1], dp[3]);
  r.cof[3] = det3(dp[0], dp[1], dp[2]);
  r.det = dh[0] * r.cof[0] + dh[1] * r.cof[1] + dh[2] * r.cof[2] + dh[3] * r.cof[3];
  return r;
}

PowerDet<Interval> power_det_interval(const std::array<const WeightedPoint*, 4>& s,
                                      const WeightedPoint& q) {
  std::array<Vec3<Interval>, 4> dp;
  std::array<Interval, 4> dh;
  for (int k = 0; k < 4; ++k) {
    dp[k] = s[k]->ip - q.ip;
    dh[k] = s[k]->ih - q.ih;
  }
  return power_det(dp, dh);
}

PowerDet<Rational> power_det_rational(const std::array<const WeightedPoint*, 4>& s,
                                      const WeightedPoint& q) {
  std::array<Vec3<Rational>, 4> dp;
  std::array<Rational, 4> dh;
  for (int k = 0; k < 4; ++k) {
    dp[k] = s[k]->p - q.p;
    dh[k] = s[k]->h - q.h;
  }
  return power_det(dp, dh);
}

}  // namespace

Sign orient3d_points(const Vec3<Rational>& a, const Vec3<Rational>& b,
                     const Vec3<Rational>& c, const Vec3<Rational>& d) {
  return sign_exact(det3(b - a, c - a, d - a));
}

Sign orient3d(const WeightedPoint& a, const WeightedPoint& b, const WeightedPoint& c,
              const WeightedPoint& d) {
  return sign_filtered(
      [&] { return det3(b.ip - a.ip, c.ip - a.ip, d.ip - a.ip); },
      [&] { return det3(b.p - a.p, c.p - a.p, d.p - a.p); });
}

Sign power_side(const std::array<const WeightedPoint*, 4>& s, const WeightedPoint& q) {
  if (orient3d(*s[0], *s[1], *s[2], *s[3]) == Sign::Zero)
    throw std::invalid_argument("power_side: coplanar site quadruple");
  {
    const auto iv = power_det_interval(s, q);
    if (iv.det.is_positive()) {
      ++FilterStats::interval_decided;
      return Sign::Positive;
    }
    if (iv.det.is_negative()) {
      ++FilterStats::interval_decided;
      return Sign::Negative;
    }
  }
  ++FilterStats::rational_fallback;
  return sign_exact(power_det_rational(s, q).det);
}

bool power_conflict(const std::array<const WeightedPoint*, 4>& s, const WeightedPoint& q) {
  {
    const auto iv = power_det_interval(s, q);
    if (iv.det.is_positive()) {
      ++FilterStats::interval_decided;
      return false;
    }
    if (iv.det.is_negative()) {
      ++FilterStats::interval_decided;
      return true;
    }
  }
  ++FilterStats::rational_fallback;
  const auto ex = power_det_rational(s, q);
  const Sign d = sign_exact(ex.det);
  if (d != Sign::Zero) return d == Sign::Negative;

  // Cospherical: simulate w_k -> w_k - eps^(index_k + 1). The determinant is
  // affine in the lifted heights, so only single-site terms appear; the
  // smallest participating index dominates. The query's own term equals the
  // cofactor sum, which is nonzero for affinely independent sites, so the
  // cascade always decides.
  struct Term {
    int index;
    int which;  // 0..3 = site, 4 = query
  };
  std::array<Term, 5> order{
      Term{s[0]->index, 0}, Term{s[1]->index, 1}, Term{s[2]->index, 2},
      Term{s[3]->index, 3}, Term{q.index, 4}};
  std::sort(order.begin(), order.end(),
            [](const Term& a, const Term& b) { return a.index < b.index; });
  for (const Term& t : order) {
    Sign sgn;
    if (t.which < 4) {
      sgn = -sign_exact(ex.cof[t.which]);
    } else {
      sgn = sign_exact(ex.cof[0] + ex.cof[1] + ex.cof[2] + ex.cof[3]);
    }
    if (sgn != Sign::Zero) return sgn == Sign::Negative;
  }
  throw std::logic_error("power_conflict: degenerate cofactor cascade");
}

Sign side_of_unit_sphere(const ExactPoint& x) {
  return sign_filtered(
      [&] { return norm2(x.iv) - Interval(1.0); },
      [&] { return norm2(x.r) - Rational(1); });
}

Sign facet_plane_vs_sphere(const WeightedPoint& i, const WeightedPoint& j) {
  // Plane <u, n> = h with n = p_j - p_i and h = (h_j - h_i)/2. Squared
  // distance to the origin compares to 1 via sign((h_j-h_i)^2 - 4 |n|^2).
  const Sign s = sign_filtered(
      [&] {
        const Interval dh = j.ih - i.ih;
        return square(dh) - Interval(4.0) * norm2(j.ip - i.ip);
      },
      [&] {
        const Rational dh = j.h - i.h;
        return dh * dh - Rational(4) * norm2(j.p - i.p);
      });
  if (s != Sign::Negative && i.p == j.p)
    throw std::invalid_argument("facet_plane_vs_sphere: coincident sites");
  return s;
}

RidgeSupport::RidgeSupport(ExactPoint a, Vec3<Rational> d, bool ray)
    : apex(std::move(a)), dir(std::move(d)), is_ray(ray) {
  dir_iv = Vec3<Interval>{to_interval(dir.x), to_interval(dir.y), to_interval(dir.z)};
  zero_length = !ray && dir.x == 0 && dir.y == 0 && dir.z == 0;
}

RidgeSupport RidgeSupport::segment(ExactPoint a, const ExactPoint& b) {
  Vec3<Rational> d = b.r - a.r;
  return RidgeSupport(std::move(a), std::move(d), false);
}

RidgeCrossings ridge_sphere_crossings(const RidgeSupport& ridge) {
  RidgeCrossings out;
  out.apex_side = side_of_unit_sphere(ridge.apex);

  if (ridge.zero_length) {
    out.far_side = out.apex_side;
    if (out.apex_side == Sign::Zero) {
      out.count = 2;
      out.tangent = true;
      out.in_range = {true, true};
    }
    return out;
  }

  // |apex + t*dir|^2 - 1 = A t^2 + B t + C.
  const auto& a = ridge.apex;
  const auto& d = ridge.dir;

  auto sgn = [&](auto&& fiv, auto&& fr) { return sign_filtered(fiv, fr); };

  const Sign sC = out.apex_side;
  const Sign sDisc = sgn(
      [&] {
        const Interval A = norm2(ridge.dir_iv);
        const Interval B = Interval(2.0) * dot(a.iv, ridge.dir_iv);
        const Interval C = norm2(a.iv) - Interval(1.0);
        return square(B) - Interval(4.0) * A * C;
      },
      [&] {
        const Rational A = norm2(d);
        const Rational B = Rational(2) * dot(a.r, d);
        const Rational C = norm2(a.r) - Rational(1);
        return B * B - Rational(4) * A * C;
      });

  const Sign sB = sgn([&] { return Interval(2.0) * dot(a.iv, ridge.dir_iv); },
                      [&] { return Rational(2) * dot(a.r, d); });
  // q(1) = A + B + C, only meaningful for segments
  const Sign sQ1 = ridge.is_ray
                       ? Sign::Positive
                       : sgn(
                             [&] {
                               const Vec3<Interval> b = a.iv + ridge.dir_iv;
                               return norm2(b) - Interval(1.0);
                             },
                             [&] {
                               const Vec3<Rational> b = a.r + d;
                               return norm2(b) - Rational(1);
                             });
  // 2A + B
  const Sign s2AB = sgn(
      [&] {
        return Interval(2.0) * norm2(ridge.dir_iv) + Interval(2.0) * dot(a.iv, ridge.dir_iv);
      },
      [&] { return Rational(2) * norm2(d) + Rational(2) * dot(a.r, d); });

  out.far_side = ridge.is_ray ? Sign::Positive : sQ1;

  if (sDisc == Sign::Negative) {
    out.count = 0;
    return out;
  }

  auto ge = [](Sign s) { return s != Sign::Negative; };
  auto le = [](Sign s) { return s != Sign::Positive; };

  if (sDisc == Sign::Zero) {
    // double root at t* = -B / (2A)
    bool in = le(sB);  // t* >= 0
    if (!ridge.is_ray) in = in && ge(s2AB);  // t* <= 1
    out.tangent = true;
    out.in_range = {in, in};
    out.count = in ? 2 : 0;
    return out;
  }

  // two distinct roots t1 < t2
  const bool t1_ge0 = le(sB) && ge(sC);
  const bool t1_le1 = ridge.is_ray || ge(s2AB) || le(sQ1);
  const bool t2_ge0 = le(sB) || le(sC);
  const bool t2_le1 = ridge.is_ray || (ge(s2AB) && ge(sQ1));
  out.in_range = {t1_ge0 && t1_le1, t2_ge0 && t2_le1};
  out.count = (out.in_range[0] ? 1 : 0) + (out.in_range[1] ? 1 : 0);
  return out;
}

}  // namespace confocal
