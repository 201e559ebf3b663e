#include "hvf/geometry.hpp"

#include "hvf/error.hpp"
#include "hvf/parallel.hpp"

namespace hvf {

Vec covariant_derivative(const Manifold& m, const VectorField& y, const Vec& p, const Vec& z) {
  m.require_tangent(p, z, "covariant_derivative");
  return m.project_tangent(p, y.derivative(p, z));
}

TangentAtPoint covariant_derivative_at(const Manifold& m, const VectorField& y, const Vec& p,
                                       const Vec& z) {
  return {p, covariant_derivative(m, y, p, z)};
}

Vec CovariantDerivativeField::value(const Vec& q) const {
  return m_->project_tangent(q, x_->derivative(q, w_->value(q)));
}

Vec CovariantDerivativeField::derivative(const Vec& q, const Vec& dir) const {
  // D(P DX[W])[d] = DP[d] DX[W] + P (D^2X[d, W] + DX[DW[d]])
  const Vec w = w_->value(q);
  const Vec dxw = x_->derivative(q, w);
  const Vec inner = x_->second_derivative(q, dir, w) + x_->derivative(q, w_->derivative(q, dir));
  return m_->projector_derivative(q, dir, dxw) + m_->project_tangent(q, inner);
}

Vec second_covariant_derivative(const ManifoldPtr& m, const FieldPtr& x, const Vec& p,
                                const Vec& z, const FieldPtr& w) {
  const CovariantDerivativeField nwx(m, x, w);
  return covariant_derivative(*m, nwx, p, z);
}

FieldPtr frame_extension(const Manifold& m, const Vec& p, const Vec& v) {
  FrameFields frame = m.frame_fields(p);
  std::vector<double> c;
  c.reserve(frame.size());
  for (const auto& e : frame) c.push_back(e->value(p).dot(v));
  return std::make_shared<LinearCombinationField>(std::move(frame), std::move(c));
}

Vec riemann(const ManifoldPtr& m, const Vec& p, const Vec& x, const Vec& y, const Vec& z) {
  m->require_tangent(p, x, "riemann");
  m->require_tangent(p, y, "riemann");
  m->require_tangent(p, z, "riemann");
  const FieldPtr xf = frame_extension(*m, p, x);
  const FieldPtr yf = frame_extension(*m, p, y);
  const FieldPtr zf = frame_extension(*m, p, z);
  const Vec xy = second_covariant_derivative(m, zf, p, x, yf);
  const Vec yx = second_covariant_derivative(m, zf, p, y, xf);
  // Lie bracket of tangent fields; tangent on M, projected to drop FD noise.
  const Vec bracket = m->project_tangent(p, yf->derivative(p, x) - xf->derivative(p, y));
  return xy - yx - m->project_tangent(p, zf->derivative(p, bracket));
}

FrameAtPoint frame_field(const Manifold& m, const Vec& p) { return m.frame(p); }

double integrate(const Manifold& m, const std::function<double(const Vec&)>& f, int level) {
  const auto nodes = m.quadrature(level);
  const auto terms =
      parallel_map(nodes.size(), [&](std::size_t k) { return nodes[k].weight * f(nodes[k].point); });
  return ordered_sum(terms);
}

}  // namespace hvf
