#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace confocal {

template <class T>
struct Vec3 {
  T x{}, y{}, z{};

  Vec3() = default;
  Vec3(T xx, T yy, T zz) : x(std::move(xx)), y(std::move(yy)), z(std::move(zz)) {}

  T& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  const T& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return Vec3{a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return Vec3{a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator-(const Vec3& a) { return Vec3{-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(const T& s, const Vec3& a) {
    return Vec3{s * a.x, s * a.y, s * a.z};
  }
  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return Vec3<T>{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T>
T norm2(const Vec3<T>& a) {
  return dot(a, a);
}

/// det [a; b; c] by rows.
template <class T>
T det3(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  return dot(a, cross(b, c));
}

template <class To, class From, class Fn>
Vec3<To> map_vec(const Vec3<From>& v, Fn&& f) {
  return Vec3<To>{f(v.x), f(v.y), f(v.z)};
}

using Vec3d = Vec3<double>;

inline Vec3d normalized(const Vec3d& v) {
  const double n = std::sqrt(norm2(v));
  return Vec3d{v.x / n, v.y / n, v.z / n};
}

}  // namespace confocal
