#pragma once

#include "hvf/geometry.hpp"

namespace hvf {

/// A vector field on M flagged as unit length (or not).
struct UnitField {
  FieldPtr field;
  bool is_unit = true;

  Vec operator()(const Vec& p) const { return field->value(p); }
};

/// Throws PreconditionError if |g(X,X) - 1| >= 1e-8 at p.
void require_unit(const VectorField& x, const Vec& p, const char* what);

Vec nabla_field(const Manifold& m, const VectorField& x, const Vec& p, const Vec& z);

/// Frame fields at p, checked for orthonormality at p (1e-10).
FrameFields checked_frame(const Manifold& m, const Vec& p, const FrameFields& frame);

/// sum_i [nabla_{V_i} nabla_{V_i} X - nabla_{nabla_{V_i} V_i} X]
Vec trace_hessian(const ManifoldPtr& m, const FieldPtr& x, const Vec& p,
                  const FrameFields& frame);
Vec trace_hessian(const ManifoldPtr& m, const FieldPtr& x, const Vec& p);

/// Delta_g X = -trace_hessian; +2 X_1 for the Hopf field on the unit 3-sphere.
Vec rough_laplacian(const ManifoldPtr& m, const FieldPtr& x, const Vec& p,
                    const FrameFields& frame);
Vec rough_laplacian(const ManifoldPtr& m, const FieldPtr& x, const Vec& p);

/// sum_i |nabla_{V_i} X|^2
double grad_norm_sq(const Manifold& m, const VectorField& x, const Vec& p,
                    const FrameFields& frame);
double grad_norm_sq(const Manifold& m, const VectorField& x, const Vec& p);

/// sum_i g(nabla_{V_i} X, V_i)
double divergence(const Manifold& m, const VectorField& x, const Vec& p,
                  const FrameFields& frame);
double divergence(const Manifold& m, const VectorField& x, const Vec& p);

/// sum_i R(X, V_i) V_i for a tangent vector X at p.
Vec ricci_action(const ManifoldPtr& m, const Vec& x, const Vec& p);

/// sum_i R(X, nabla_{V_i} X) V_i
Vec curvature_trace(const ManifoldPtr& m, const VectorField& x, const Vec& p,
                    const FrameFields& frame);
Vec curvature_trace(const ManifoldPtr& m, const VectorField& x, const Vec& p);

}  // namespace hvf
