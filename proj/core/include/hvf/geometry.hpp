#pragma once

#include <functional>

#include "hvf/field.hpp"
#include "hvf/manifold.hpp"

namespace hvf {

/// nabla_Z Y at p: tangential part of the ambient derivative of Y along Z
/// (Gauss formula).
Vec covariant_derivative(const Manifold& m, const VectorField& y, const Vec& p, const Vec& z);
TangentAtPoint covariant_derivative_at(const Manifold& m, const VectorField& y, const Vec& p,
                                       const Vec& z);

/// The field q -> nabla_{W(q)} X(q) (ambient extension through the projector).
class CovariantDerivativeField final : public VectorField {
 public:
  CovariantDerivativeField(ManifoldPtr m, FieldPtr x, FieldPtr w)
      : m_(std::move(m)), x_(std::move(x)), w_(std::move(w)) {}
  int ambient_dim() const override { return x_->ambient_dim(); }
  Vec value(const Vec& q) const override;
  Vec derivative(const Vec& q, const Vec& dir) const override;
  bool analytic() const override { return x_->analytic() && w_->analytic(); }

 private:
  ManifoldPtr m_;
  FieldPtr x_, w_;
};

/// nabla_Z (nabla_W X) at p, W a field.
Vec second_covariant_derivative(const ManifoldPtr& m, const FieldPtr& x, const Vec& p,
                                const Vec& z, const FieldPtr& w);

/// Constant-coefficient extension of a tangent vector at p in the frame at p.
FieldPtr frame_extension(const Manifold& m, const Vec& p, const Vec& v);

/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z, computed
/// from frame-extended fields. On the unit sphere R(X,Y)Z = <Y,Z>X - <X,Z>Y.
Vec riemann(const ManifoldPtr& m, const Vec& p, const Vec& x, const Vec& y, const Vec& z);

FrameAtPoint frame_field(const Manifold& m, const Vec& p);

/// sum_k w_k f(p_k) over the level-`level` quadrature rule.
double integrate(const Manifold& m, const std::function<double(const Vec&)>& f, int level);

}  // namespace hvf
