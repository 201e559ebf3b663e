#include "hvf/bundle_point.hpp"

#include <cmath>
#include <sstream>

#include "hvf/error.hpp"

namespace hvf {

namespace {
constexpr double kTmDifferenceStep = 1e-4;
}  // namespace

BundlePoint make_bundle_point(const Manifold& m, const Vec& p, const Vec& u, bool unit) {
  m.require_tangent(p, u, "bundle point fiber");
  if (unit && std::abs(u.squaredNorm() - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "unit bundle point: |u|^2 = " << u.squaredNorm();
    throw PreconditionError(os.str());
  }
  return {p, u};
}

BundlePoint tm_curve(const Manifold& m, const BundlePoint& b, const SplitTangent& a, double t) {
  const Vec p = m.project_point(b.base + t * a.h);
  return {p, m.project_tangent(p, b.fiber + t * a.v)};
}

double tm_derivative(const Manifold& m, const std::function<double(const BundlePoint&)>& f,
                     const BundlePoint& b, const SplitTangent& a) {
  const double len = a.raw_norm();
  if (len == 0.0) return 0.0;
  const double scale =
      std::max({1.0, b.base.norm(), b.fiber.norm()});
  // fourth-order central stencil; truncation ~ t^4, rounding ~ eps / t
  const double t = kTmDifferenceStep * scale / len;
  const auto at = [&](double s) { return f(tm_curve(m, b, a, s)); };
  return (8.0 * (at(t) - at(-t)) - (at(2 * t) - at(-2 * t))) / (12.0 * t);
}

}  // namespace hvf
