#pragma once

#include <array>

#include "confocal/filtered.hpp"
#include "confocal/weighted_point.hpp"

namespace confocal {

/// Orientation of the tetrahedron (a,b,c,d): sign of det[b-a; c-a; d-a].
Sign orient3d(const WeightedPoint& a, const WeightedPoint& b, const WeightedPoint& c,
              const WeightedPoint& d);
Sign orient3d_points(const Vec3<Rational>& a, const Vec3<Rational>& b,
                     const Vec3<Rational>& c, const Vec3<Rational>& d);

/// Power test of query q against the power sphere of four affinely
/// independent sites: Negative = inside, Zero = on, Positive = outside.
/// Throws std::invalid_argument if the sites are coplanar.
Sign power_side(const std::array<const WeightedPoint*, 4>& s, const WeightedPoint& q);

/// Power test resolved by symbolic perturbation of the weights in input
/// index order (smaller index perturbed more). Never returns "on"; true
/// means q is inside (in conflict). Requires affinely independent sites.
bool power_conflict(const std::array<const WeightedPoint*, 4>& s, const WeightedPoint& q);

/// Sign of |x|^2 - 1: Negative inside the unit sphere, Zero on, Positive outside.
Sign side_of_unit_sphere(const ExactPoint& x);

/// Number of intersections of the supporting plane of the facet between
/// sites i and j with the unit sphere, encoded as a Sign:
/// Negative -> infinitely many (the plane crosses), Zero -> one (tangent),
/// Positive -> none. Throws std::invalid_argument if the positions coincide.
Sign facet_plane_vs_sphere(const WeightedPoint& i, const WeightedPoint& j);

/// Ridge support: apex plus direction; a segment covers t in [0,1] (dir is
/// b - a), a ray covers t in [0, inf).
struct RidgeSupport {
  ExactPoint apex;
  Vec3<Rational> dir;
  Vec3<Interval> dir_iv;
  bool is_ray = false;
  bool zero_length = false;

  RidgeSupport() = default;
  RidgeSupport(ExactPoint a, Vec3<Rational> d, bool ray);
  static RidgeSupport segment(ExactPoint a, const ExactPoint& b);
};

/// Crossings of a ridge with the unit sphere. The two line roots are
/// t1 <= t2 along the stored direction; in_range[k] tells whether root k
/// lies within the ridge's parameter range. Tangency yields two coincident
/// crossings, per the convention used throughout.
struct RidgeCrossings {
  int count = 0;
  std::array<bool, 2> in_range{false, false};
  bool tangent = false;
  Sign apex_side = Sign::Positive;  // side_of_unit_sphere(apex)
  Sign far_side = Sign::Positive;   // far endpoint; Positive for rays
};

RidgeCrossings ridge_sphere_crossings(const RidgeSupport& ridge);

}  // namespace confocal
