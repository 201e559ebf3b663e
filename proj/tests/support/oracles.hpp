#pragma once

// Independent reference values for the tests. Nothing here calls the
// library's connection, curvature or tension code.

#include <cmath>
#include <numbers>
#include <random>

#include <hvf/linalg.hpp>
#include <hvf/manifold.hpp>

namespace oracle {

using hvf::Mat;
using hvf::Vec;

inline constexpr double pi = std::numbers::pi;

// Quaternionic structures written out by hand:
// J1 v = (-v2, v1, -v4, v3), J2 v = (v3, -v4, -v1, v2), J3 v = (v4, v3, -v2, -v1).
inline Vec j(int i, const Vec& v) {
  Vec r(4);
  if (i == 1) r << -v(1), v(0), -v(3), v(2);
  if (i == 2) r << v(2), -v(3), -v(0), v(1);
  if (i == 3) r << v(3), v(2), -v(1), -v(0);
  return r;
}

inline Vec hopf(int i, const Vec& p) { return j(i, p); }

inline Vec sphere_tangent_part(const Vec& p, const Vec& v) { return v - v.dot(p) * p; }

/// Unit-sphere curvature R(x,y)z = <y,z>x - <x,z>y.
inline Vec sphere_curvature(const Vec& x, const Vec& y, const Vec& z) {
  return y.dot(z) * x - x.dot(z) * y;
}

inline Vec random_s3(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec p(4);
  for (int k = 0; k < 4; ++k) p(k) = g(rng);
  return p.normalized();
}

inline Vec random_s3_tangent(const Vec& p, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(4);
  for (int k = 0; k < 4; ++k) v(k) = g(rng);
  return sphere_tangent_part(p, v);
}

inline Vec random_vec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (int k = 0; k < n; ++k) v(k) = g(rng);
  return v;
}

/// Relative gap |a - b| / max(1, |b|).
inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace oracle
