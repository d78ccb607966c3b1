#pragma once

#include <utility>

#include "confocal/rational.hpp"
#include "confocal/vec.hpp"

namespace confocal {

/// 3D point with exact rational coordinates plus a cached interval
/// enclosure used by the filtered predicates.
struct ExactPoint {
  Vec3<Rational> r;
  Vec3<Interval> iv;

  ExactPoint() = default;
  explicit ExactPoint(Vec3<Rational> v) : r(std::move(v)) {
    iv = Vec3<Interval>{to_interval(r.x), to_interval(r.y), to_interval(r.z)};
  }

  Vec3d approx() const {
    return Vec3d{to_double(r.x), to_double(r.y), to_double(r.z)};
  }
};

/// Power-diagram site: rational position p, rational weight w, and the input
/// index that identifies it in diagrams and in the symbolic perturbation
/// order. h = |p|^2 + w is the lifted height used by the power test.
struct WeightedPoint {
  Vec3<Rational> p;
  Rational w;
  int index = -1;

  Rational h;
  Vec3<Interval> ip;
  Interval ih;

  WeightedPoint() = default;
  WeightedPoint(Vec3<Rational> pos, Rational weight, int idx)
      : p(std::move(pos)), w(std::move(weight)), index(idx) {
    h = norm2(p) + w;
    ip = Vec3<Interval>{to_interval(p.x), to_interval(p.y), to_interval(p.z)};
    ih = to_interval(h);
  }

  Vec3d approx_pos() const { return Vec3d{to_double(p.x), to_double(p.y), to_double(p.z)}; }
};

}  // namespace confocal
