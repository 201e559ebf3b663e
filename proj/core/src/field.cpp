#include "hvf/field.hpp"

#include <algorithm>
#include <cmath>

#include "hvf/error.hpp"

namespace hvf {

Vec central_difference(const std::function<Vec(const Vec&)>& f, const Vec& q, const Vec& dir,
                       double base_step) {
  const double len = dir.norm();
  if (len == 0.0) return Vec::Zero(f(q).size());
  const double h = base_step * std::max(1.0, q.norm());
  const double t = h / len;
  const Vec qp = q + t * dir;
  const Vec qm = q - t * dir;
  return (f(qp) - f(qm)) / (2.0 * t);
}

Vec VectorField::derivative(const Vec& q, const Vec& dir) const {
  return central_difference([this](const Vec& x) { return value(x); }, q, dir,
                            kFirstDifferenceStep);
}

Vec VectorField::second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const {
  return central_difference([this, &d2](const Vec& x) { return derivative(x, d2); }, q, d1,
                            kSecondDifferenceStep);
}

Vec FunctionField::derivative(const Vec& q, const Vec& dir) const {
  if (derivative_) return derivative_(q, dir);
  return VectorField::derivative(q, dir);
}

Vec FunctionField::second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const {
  if (second_) return second_(q, d1, d2);
  return VectorField::second_derivative(q, d1, d2);
}

LinearCombinationField::LinearCombinationField(FrameFields fields, std::vector<double> coeffs)
    : fields_(std::move(fields)), coeffs_(std::move(coeffs)) {
  if (fields_.empty() || fields_.size() != coeffs_.size())
    throw PreconditionError("LinearCombinationField: size mismatch");
  analytic_ = std::all_of(fields_.begin(), fields_.end(),
                          [](const FieldPtr& f) { return f->analytic(); });
}

Vec LinearCombinationField::value(const Vec& q) const {
  Vec out = Vec::Zero(ambient_dim());
  for (std::size_t k = 0; k < fields_.size(); ++k)
    if (coeffs_[k] != 0.0) out += coeffs_[k] * fields_[k]->value(q);
  return out;
}

Vec LinearCombinationField::derivative(const Vec& q, const Vec& dir) const {
  Vec out = Vec::Zero(ambient_dim());
  for (std::size_t k = 0; k < fields_.size(); ++k)
    if (coeffs_[k] != 0.0) out += coeffs_[k] * fields_[k]->derivative(q, dir);
  return out;
}

Vec LinearCombinationField::second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const {
  Vec out = Vec::Zero(ambient_dim());
  for (std::size_t k = 0; k < fields_.size(); ++k)
    if (coeffs_[k] != 0.0) out += coeffs_[k] * fields_[k]->second_derivative(q, d1, d2);
  return out;
}

CoefficientField::CoefficientField(FrameFields fields, std::vector<ScalarFunctionPtr> coeffs)
    : fields_(std::move(fields)), coeffs_(std::move(coeffs)) {
  if (fields_.empty() || fields_.size() != coeffs_.size())
    throw PreconditionError("CoefficientField: size mismatch");
  analytic_ = std::all_of(fields_.begin(), fields_.end(),
                          [](const FieldPtr& f) { return f->analytic(); });
}

Vec CoefficientField::value(const Vec& q) const {
  Vec out = Vec::Zero(ambient_dim());
  for (std::size_t k = 0; k < fields_.size(); ++k)
    out += coeffs_[k]->value(q) * fields_[k]->value(q);
  return out;
}

Vec CoefficientField::derivative(const Vec& q, const Vec& dir) const {
  Vec out = Vec::Zero(ambient_dim());
  for (std::size_t k = 0; k < fields_.size(); ++k) {
    out += coeffs_[k]->gradient(q).dot(dir) * fields_[k]->value(q);
    out += coeffs_[k]->value(q) * fields_[k]->derivative(q, dir);
  }
  return out;
}

Vec CoefficientField::second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const {
  Vec out = Vec::Zero(ambient_dim());
  for (std::size_t k = 0; k < fields_.size(); ++k) {
    const auto& c = *coeffs_[k];
    const auto& e = *fields_[k];
    const Vec grad = c.gradient(q);
    out += c.hessian(q, d1, d2) * e.value(q);
    out += grad.dot(d2) * e.derivative(q, d1);
    out += grad.dot(d1) * e.derivative(q, d2);
    out += c.value(q) * e.second_derivative(q, d1, d2);
  }
  return out;
}

Vec NormalizedField::value(const Vec& q) const {
  const Vec h = inner_->value(q);
  return h / h.norm();
}

Vec NormalizedField::derivative(const Vec& q, const Vec& dir) const {
  const Vec h = inner_->value(q);
  const double s = h.norm();
  const Vec u = h / s;
  const Vec a = inner_->derivative(q, dir);
  return (a - u * u.dot(a)) / s;
}

Vec NormalizedField::second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const {
  const Vec h = inner_->value(q);
  const double s = h.norm();
  const Vec u = h / s;
  const Vec a1 = inner_->derivative(q, d1);
  const Vec a2 = inner_->derivative(q, d2);
  const Vec b = inner_->second_derivative(q, d1, d2);
  const Vec du1 = (a1 - u * u.dot(a1)) / s;
  const Vec du2 = (a2 - u * u.dot(a2)) / s;
  const Vec num = b - du1 * u.dot(a2) - u * (du1.dot(a2) + u.dot(b));
  return num / s - du2 * (u.dot(a1) / s);
}

Vec OrthogonalPartField::value(const Vec& q) const {
  const Vec w = w_->value(q);
  const Vec x = x_->value(q);
  return w - w.dot(x) * x;
}

Vec OrthogonalPartField::derivative(const Vec& q, const Vec& dir) const {
  const Vec w = w_->value(q);
  const Vec x = x_->value(q);
  const Vec dw = w_->derivative(q, dir);
  const Vec dx = x_->derivative(q, dir);
  return dw - (dw.dot(x) + w.dot(dx)) * x - w.dot(x) * dx;
}

FieldPtr unit_variation(FieldPtr x, FieldPtr v, double t) {
  return std::make_shared<NormalizedField>(
      std::make_shared<AffineSumField>(std::move(x), 1.0, std::move(v), t));
}

}  // namespace hvf
