#include "hvf/field_calculus.hpp"

#include <cmath>
#include <sstream>

#include "hvf/error.hpp"

namespace hvf {

void require_unit(const VectorField& x, const Vec& p, const char* what) {
  const double n2 = x.value(p).squaredNorm();
  if (!(std::abs(n2 - 1.0) < 1e-8)) {
    std::ostringstream os;
    os << what << ": field is not unit (|X|^2 = " << n2 << ")";
    throw PreconditionError(os.str());
  }
}

Vec nabla_field(const Manifold& m, const VectorField& x, const Vec& p, const Vec& z) {
  return covariant_derivative(m, x, p, z);
}

FrameFields checked_frame(const Manifold& m, const Vec& p, const FrameFields& frame) {
  if (static_cast<int>(frame.size()) != m.dim())
    throw PreconditionError("frame has the wrong number of vectors");
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Vec vi = frame[i]->value(p);
    for (std::size_t j = 0; j <= i; ++j) {
      const double gij = vi.dot(frame[j]->value(p));
      if (std::abs(gij - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw PreconditionError("frame is not orthonormal");
    }
  }
  return frame;
}

Vec trace_hessian(const ManifoldPtr& m, const FieldPtr& x, const Vec& p,
                  const FrameFields& frame) {
  checked_frame(*m, p, frame);
  Vec out = Vec::Zero(m->ambient_dim());
  for (const auto& v : frame) {
    const Vec vp = v->value(p);
    out += second_covariant_derivative(m, x, p, vp, v);
    out -= covariant_derivative(*m, *x, p, covariant_derivative(*m, *v, p, vp));
  }
  return out;
}

Vec trace_hessian(const ManifoldPtr& m, const FieldPtr& x, const Vec& p) {
  return trace_hessian(m, x, p, m->frame_fields(p));
}

Vec rough_laplacian(const ManifoldPtr& m, const FieldPtr& x, const Vec& p,
                    const FrameFields& frame) {
  return -trace_hessian(m, x, p, frame);
}

Vec rough_laplacian(const ManifoldPtr& m, const FieldPtr& x, const Vec& p) {
  return -trace_hessian(m, x, p);
}

double grad_norm_sq(const Manifold& m, const VectorField& x, const Vec& p,
                    const FrameFields& frame) {
  double s = 0.0;
  for (const auto& v : frame) s += covariant_derivative(m, x, p, v->value(p)).squaredNorm();
  return s;
}

double grad_norm_sq(const Manifold& m, const VectorField& x, const Vec& p) {
  return grad_norm_sq(m, x, p, m.frame_fields(p));
}

double divergence(const Manifold& m, const VectorField& x, const Vec& p,
                  const FrameFields& frame) {
  double s = 0.0;
  for (const auto& v : frame) {
    const Vec vp = v->value(p);
    s += covariant_derivative(m, x, p, vp).dot(vp);
  }
  return s;
}

double divergence(const Manifold& m, const VectorField& x, const Vec& p) {
  return divergence(m, x, p, m.frame_fields(p));
}

Vec ricci_action(const ManifoldPtr& m, const Vec& x, const Vec& p) {
  Vec out = Vec::Zero(m->ambient_dim());
  for (const Vec& v : m->frame(p).vectors) out += riemann(m, p, x, v, v);
  return out;
}

Vec curvature_trace(const ManifoldPtr& m, const VectorField& x, const Vec& p,
                    const FrameFields& frame) {
  const Vec xp = x.value(p);
  Vec out = Vec::Zero(m->ambient_dim());
  for (const auto& v : frame) {
    const Vec vp = v->value(p);
    out += riemann(m, p, xp, covariant_derivative(*m, x, p, vp), vp);
  }
  return out;
}

Vec curvature_trace(const ManifoldPtr& m, const VectorField& x, const Vec& p) {
  return curvature_trace(m, x, p, m->frame_fields(p));
}

}  // namespace hvf
