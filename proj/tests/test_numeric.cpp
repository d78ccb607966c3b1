#include <random>

#include "confocal/filtered.hpp"
#include "confocal/interval.hpp"
#include "confocal/predicates.hpp"
#include "confocal/rational.hpp"
#include "confocal/vec.hpp"
#include "confocal/weighted_point.hpp"
#include "doctest.h"

using namespace confocal;

namespace {

Rational rr(long num, long den = 1) { return Rational(num) / Rational(den); }

WeightedPoint wp(long x, long y, long z, long w, int idx, long den = 1) {
  return WeightedPoint({rr(x, den), rr(y, den), rr(z, den)}, rr(w), idx);
}

// Random expression tree over rational leaves, evaluated in both arithmetics.
struct ExprNode {
  int op;  // 0 leaf, 1 add, 2 sub, 3 mul
  Rational leaf;
  int lhs = -1, rhs = -1;
};

struct ExprPool {
  std::vector<ExprNode> nodes;
  int random_expr(std::mt19937_64& rng, int depth) {
    ExprNode n;
    if (depth == 0 || rng() % 4 == 0) {
      n.op = 0;
      const long num = static_cast<long>(rng() % 41) - 20;
      const long den = 1 + static_cast<long>(rng() % 9);
      n.leaf = Rational(num) / Rational(den);
    } else {
      n.op = 1 + static_cast<int>(rng() % 3);
      n.lhs = random_expr(rng, depth - 1);
      n.rhs = random_expr(rng, depth - 1);
    }
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }
  Rational eval_rational(int id) const {
    const ExprNode& n = nodes[id];
    if (n.op == 0) return n.leaf;
    const Rational a = eval_rational(n.lhs), b = eval_rational(n.rhs);
    return n.op == 1 ? a + b : (n.op == 2 ? a - b : a * b);
  }
  Interval eval_interval(int id) const {
    const ExprNode& n = nodes[id];
    if (n.op == 0) return to_interval(n.leaf);
    const Interval a = eval_interval(n.lhs), b = eval_interval(n.rhs);
    return n.op == 1 ? a + b : (n.op == 2 ? a - b : a * b);
  }
};

}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(rational_from_string("2/6") == rr(1, 3));
  CHECK(rational_from_string("-7/3") == rr(-7, 3));
  CHECK(rational_from_string("42") == Rational(42));
  CHECK(rational_from_string("0.125") == rr(1, 8));
  CHECK(rational_from_string("-1.5e-3") == rr(-3, 2000));
  CHECK(rational_from_string("2.5E2") == Rational(250));
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
  CHECK(rational_to_string(rr(-3, 7)) == "-3/7");
}

TEST_CASE("canonical form") {
  Rational a = rr(4, 8);
  CHECK(rational_to_string(a) == "1/2");
  CHECK(rr(3, -9) == rr(-1, 3));
}

TEST_CASE("interval_contains_zero") {
  CHECK(interval_contains_zero(Interval{-1, 1}));
  CHECK_FALSE(interval_contains_zero(Interval{0.5, 2}));
  CHECK(interval_contains_zero(Interval{0, 0}));
}

TEST_CASE("sign_filtered forces rational fallback on exact cancellation") {
  FilterStats::reset();
  const Rational third = rr(1, 3);
  const Sign s = sign_filtered(
      [&] {
        const Interval t = to_interval(third);
        return t + t + t - Interval(1.0);
      },
      [&] { return third + third + third - Rational(1); });
  CHECK(s == Sign::Zero);
  CHECK(FilterStats::rational_fallback == 1);

  const Sign s2 = sign_filtered([] { return Interval(2.0) - Interval(1.0); },
                                []() -> Rational { return Rational(1); });
  CHECK(s2 == Sign::Positive);
}

TEST_CASE("sign_filtered equals pure rational sign on random expressions") {
  std::mt19937_64 rng(20240515);
  for (int trial = 0; trial < 100000; ++trial) {
    ExprPool pool;
    const int root = pool.random_expr(rng, 3);
    const Rational exact = pool.eval_rational(root);
    const Sign got = sign_filtered([&] { return pool.eval_interval(root); },
                                   [&] { return pool.eval_rational(root); });
    CHECK(got == sign_exact(exact));
    const Interval iv = pool.eval_interval(root);
    const double lo = to_double(exact);  // within 1 ulp of the exact value
    CHECK(iv.lo <= lo);
    CHECK(iv.hi >= lo);
  }
}

TEST_CASE("interval encloses the rational value") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20000; ++trial) {
    ExprPool pool;
    const int root = pool.random_expr(rng, 4);
    const Rational exact = pool.eval_rational(root);
    const Interval iv = pool.eval_interval(root);
    // compare exactly: iv.lo <= exact <= iv.hi as rationals
    CHECK(Rational(iv.lo) <= exact);
    CHECK(Rational(iv.hi) >= exact);
  }
}

TEST_CASE("power_side matches the hand determinant oracle") {
  // unit tetrahedron, zero weights
  const WeightedPoint a = wp(0, 0, 0, 0, 0), b = wp(1, 0, 0, 0, 1), c = wp(0, 1, 0, 0, 2),
                      d = wp(0, 0, 1, 0, 3);
  const std::array<const WeightedPoint*, 4> s{&a, &b, &c, &d};

  const WeightedPoint centroid({rr(1, 4), rr(1, 4), rr(1, 4)}, rr(0), 4);
  CHECK(power_side(s, centroid) == Sign::Negative);  // inside

  CHECK(power_side(s, a) == Sign::Zero);  // a site itself

  const WeightedPoint far = wp(100, 0, 0, 0, 5);
  CHECK(power_side(s, far) == Sign::Positive);

  // coplanar quadruple is an error, not sign zero
  const WeightedPoint e = wp(1, 1, 0, 0, 6);
  const std::array<const WeightedPoint*, 4> flat{&a, &b, &c, &e};
  CHECK_THROWS_AS(power_side(flat, centroid), std::invalid_argument);
}

TEST_CASE("power test of a cospherical quadruple is zero") {
  // four rational points on the unit sphere, zero weights; query on the
  // same sphere must give exactly zero
  const WeightedPoint a = wp(1, 0, 0, 0, 0), b = wp(-1, 0, 0, 0, 1), c = wp(0, 1, 0, 0, 2),
                      d = wp(0, 0, 1, 0, 3);
  const std::array<const WeightedPoint*, 4> s{&a, &b, &c, &d};
  const WeightedPoint q = wp(0, -1, 0, 0, 4);
  CHECK(power_side(s, q) == Sign::Zero);
  // stereographic rational point on the sphere: (2t, t^2-1)/(t^2+1) family
  const WeightedPoint q2({rr(3, 5), rr(4, 5), rr(0)}, rr(0), 5);
  CHECK(power_side(s, q2) == Sign::Zero);
}

TEST_CASE("perturbed power test is consistent and index-ordered") {
  const WeightedPoint a = wp(1, 0, 0, 0, 0), b = wp(-1, 0, 0, 0, 1), c = wp(0, 1, 0, 0, 2),
                      d = wp(0, 0, 1, 0, 3);
  const std::array<const WeightedPoint*, 4> s{&a, &b, &c, &d};
  // duplicate of site a with a later index loses
  const WeightedPoint dup({rr(1), rr(0), rr(0)}, rr(0), 9);
  CHECK_FALSE(power_conflict(s, dup));
  // exact cospherical query decided deterministically
  const WeightedPoint q = wp(0, -1, 0, 0, 7);
  const bool r1 = power_conflict(s, q);
  const bool r2 = power_conflict(s, q);
  CHECK(r1 == r2);
}

TEST_CASE("side_of_unit_sphere") {
  CHECK(side_of_unit_sphere(ExactPoint({rr(0), rr(0), rr(1)})) == Sign::Zero);
  CHECK(side_of_unit_sphere(ExactPoint({rr(2), rr(0), rr(0)})) == Sign::Positive);
  CHECK(side_of_unit_sphere(ExactPoint({rr(1, 2), rr(1, 2), rr(1, 2)})) == Sign::Negative);
}

TEST_CASE("facet plane vs sphere") {
  // plane z = h between sites (0,0,±t): choose weights to move the plane
  auto plane_sites = [&](Rational h) {
    // sites at z=+2 and z=-2, weight chosen so radical plane is z = h
    // plane: 2 u.(pj-pi) = hj - hi with pi=(0,0,2), pj=(0,0,-2)
    // => -8 u_z = hj - hi ; want u_z = h
    WeightedPoint i({rr(0), rr(0), rr(2)}, rr(0), 0);
    Rational hj_minus_hi = rr(-8) * h;
    // hj = |pj|^2 + wj = 4 + wj, hi = 4 => wj = hj_minus_hi
    WeightedPoint j({rr(0), rr(0), rr(-2)}, hj_minus_hi, 1);
    return std::pair{i, j};
  };
  {
    auto [i, j] = plane_sites(rr(0));
    CHECK(facet_plane_vs_sphere(i, j) == Sign::Negative);  // crosses
  }
  {
    auto [i, j] = plane_sites(rr(1));
    CHECK(facet_plane_vs_sphere(i, j) == Sign::Zero);  // tangent
  }
  {
    auto [i, j] = plane_sites(rr(2));
    CHECK(facet_plane_vs_sphere(i, j) == Sign::Positive);  // misses
  }
}

TEST_CASE("ridge sphere crossings: spec cases") {
  auto seg = [](Vec3<Rational> a, Vec3<Rational> b) {
    return RidgeSupport::segment(ExactPoint(std::move(a)), ExactPoint(std::move(b)));
  };
  // (0,0,0) -> (2,0,0): one crossing
  CHECK(ridge_sphere_crossings(seg({rr(0), rr(0), rr(0)}, {rr(2), rr(0), rr(0)})).count == 1);
  // (-2,0,0) -> (2,0,0): two crossings
  CHECK(ridge_sphere_crossings(seg({rr(-2), rr(0), rr(0)}, {rr(2), rr(0), rr(0)})).count == 2);
  // tangent segment counts as two
  {
    const auto cx = ridge_sphere_crossings(seg({rr(-1), rr(1), rr(0)}, {rr(1), rr(1), rr(0)}));
    CHECK(cx.count == 2);
    CHECK(cx.tangent);
  }
  // ray from (0,0,2) along +z: none
  {
    RidgeSupport ray(ExactPoint({rr(0), rr(0), rr(2)}), {rr(0), rr(0), rr(1)}, true);
    CHECK(ridge_sphere_crossings(ray).count == 0);
  }
  // ray from origin: one crossing
  {
    RidgeSupport ray(ExactPoint({rr(0), rr(0), rr(0)}), {rr(1), rr(1), rr(0)}, true);
    const auto cx = ridge_sphere_crossings(ray);
    CHECK(cx.count == 1);
    CHECK(cx.in_range[1]);
  }
  // zero-length off sphere / on sphere
  {
    RidgeSupport z(ExactPoint({rr(2), rr(0), rr(0)}), {rr(0), rr(0), rr(0)}, false);
    CHECK(ridge_sphere_crossings(z).count == 0);
    RidgeSupport z2(ExactPoint({rr(1), rr(0), rr(0)}), {rr(0), rr(0), rr(0)}, false);
    CHECK(ridge_sphere_crossings(z2).count == 2);
  }
}

TEST_CASE("weighted circumcenter examples") {
  // regular tetrahedron centered at the origin
  const WeightedPoint a = wp(1, 1, 1, 0, 0), b = wp(1, -1, -1, 0, 1),
                      c = wp(-1, 1, -1, 0, 2), d = wp(-1, -1, 1, 0, 3);
  const Vec3<Rational> o = weighted_circumcenter(a, b, c, d);
  CHECK(o == Vec3<Rational>{rr(0), rr(0), rr(0)});

  const WeightedPoint e = wp(0, 0, 0, 0, 0), f = wp(2, 0, 0, 0, 1), g = wp(0, 2, 0, 0, 2),
                      h = wp(0, 0, 2, 0, 3);
  CHECK(weighted_circumcenter(e, f, g, h) == Vec3<Rational>{rr(1), rr(1), rr(1)});

  // shifting one weight moves the center; hand oracle: 2(p_k-p_0).x = h_k-h_0
  const WeightedPoint e2({rr(0), rr(0), rr(0)}, rr(-4), 0);
  const Vec3<Rational> cc = weighted_circumcenter(e2, f, g, h);
  CHECK(cc == Vec3<Rational>{rr(2), rr(2), rr(2)});
  // equal power distances, exactly
  const Rational pw0 = norm2(cc - e2.p) + e2.w;
  const Rational pw1 = norm2(cc - f.p) + f.w;
  CHECK(pw0 == pw1);

  CHECK_THROWS_AS(weighted_circumcenter(e, f, g, wp(1, 1, 0, 0, 9)), std::invalid_argument);
}

TEST_CASE("rational helpers") {
  Rational root;
  CHECK(rational_is_square(rr(9, 4), &root));
  CHECK(root == rr(3, 2));
  CHECK_FALSE(rational_is_square(rr(2), nullptr));
  CHECK_FALSE(rational_is_square(rr(-4), nullptr));

  const Rational e1 = rational_exp(1.0, 64);
  CHECK(to_double(e1) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  const Rational b = rational_sqrt_upper_bound(rr(2));
  CHECK(b * b >= rr(2));
  CHECK(to_double(b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}
