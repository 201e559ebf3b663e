#pragma once

#include <cmath>
#include <functional>

#include "hvf/manifold.hpp"

namespace hvf {

/// A point (p, u) of TM.
struct BundlePoint {
  Vec base;
  Vec fiber;
};

/// A tangent vector of TM at some (p, u), split as h = pi_*(A), v = K(A).
struct SplitTangent {
  Vec h;
  Vec v;

  static SplitTangent zero(int m) { return {Vec::Zero(m), Vec::Zero(m)}; }
  static SplitTangent horizontal(const Vec& x) { return {x, Vec::Zero(x.size())}; }
  static SplitTangent vertical(const Vec& x) { return {Vec::Zero(x.size()), x}; }

  SplitTangent operator+(const SplitTangent& o) const { return {h + o.h, v + o.v}; }
  SplitTangent operator-(const SplitTangent& o) const { return {h - o.h, v - o.v}; }
  SplitTangent operator-() const { return {-h, -v}; }
  SplitTangent& operator+=(const SplitTangent& o) {
    h += o.h;
    v += o.v;
    return *this;
  }
  SplitTangent& operator-=(const SplitTangent& o) {
    h -= o.h;
    v -= o.v;
    return *this;
  }
  friend SplitTangent operator*(double c, const SplitTangent& a) { return {c * a.h, c * a.v}; }
  /// Euclidean size of the pair; used only for relative error scales.
  double raw_norm() const { return std::sqrt(h.squaredNorm() + v.squaredNorm()); }
};

/// Validates tangency of u (and |u| = 1 when `unit`).
BundlePoint make_bundle_point(const Manifold& m, const Vec& p, const Vec& u, bool unit = false);

/// A curve c with c(0) = b and c'(0) = a: base moves along project_point(p + t a.h),
/// fiber is P(u + t a.v). Since P DP P = 0 its connection-map image at 0 is a.v.
BundlePoint tm_curve(const Manifold& m, const BundlePoint& b, const SplitTangent& a, double t);

/// a(f) at b by a central difference along tm_curve.
double tm_derivative(const Manifold& m, const std::function<double(const BundlePoint&)>& f,
                     const BundlePoint& b, const SplitTangent& a);

}  // namespace hvf
