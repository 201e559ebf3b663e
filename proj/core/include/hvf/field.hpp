#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hvf/linalg.hpp"

namespace hvf {

// Finite-difference steps used whenever an analytic derivative is missing.
inline constexpr double kFirstDifferenceStep = 1e-5;
inline constexpr double kSecondDifferenceStep = 1e-4;

/// A smooth vector field on (a neighbourhood of) an embedded manifold, given
/// by its ambient extension. Derivatives are ambient directional derivatives
/// of that extension; the default implementations use central differences.
class VectorField {
 public:
  virtual ~VectorField() = default;

  virtual int ambient_dim() const = 0;
  virtual Vec value(const Vec& q) const = 0;
  /// D X(q)[dir]
  virtual Vec derivative(const Vec& q, const Vec& dir) const;
  /// D^2 X(q)[d1, d2]
  virtual Vec second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const;
  /// True when derivative() does not fall back to finite differences.
  virtual bool analytic() const { return false; }
};

using FieldPtr = std::shared_ptr<const VectorField>;
using FrameFields = std::vector<FieldPtr>;

/// Smooth scalar function on the ambient space with gradient and Hessian.
class ScalarFunction {
 public:
  virtual ~ScalarFunction() = default;
  virtual double value(const Vec& q) const = 0;
  virtual Vec gradient(const Vec& q) const = 0;
  virtual double hessian(const Vec& q, const Vec& d1, const Vec& d2) const = 0;
};

using ScalarFunctionPtr = std::shared_ptr<const ScalarFunction>;

Vec central_difference(const std::function<Vec(const Vec&)>& f, const Vec& q, const Vec& dir,
                       double base_step);

class ConstantField final : public VectorField {
 public:
  explicit ConstantField(Vec c) : c_(std::move(c)) {}
  int ambient_dim() const override { return static_cast<int>(c_.size()); }
  Vec value(const Vec&) const override { return c_; }
  Vec derivative(const Vec&, const Vec&) const override { return Vec::Zero(c_.size()); }
  Vec second_derivative(const Vec&, const Vec&, const Vec&) const override {
    return Vec::Zero(c_.size());
  }
  bool analytic() const override { return true; }

 private:
  Vec c_;
};

/// q -> A q
class LinearField final : public VectorField {
 public:
  explicit LinearField(Mat a) : a_(std::move(a)) {}
  int ambient_dim() const override { return static_cast<int>(a_.rows()); }
  Vec value(const Vec& q) const override { return a_ * q; }
  Vec derivative(const Vec&, const Vec& dir) const override { return a_ * dir; }
  Vec second_derivative(const Vec&, const Vec&, const Vec&) const override {
    return Vec::Zero(a_.rows());
  }
  bool analytic() const override { return true; }
  const Mat& matrix() const { return a_; }

 private:
  Mat a_;
};

/// Field from callables; missing derivative callables fall back to differences.
class FunctionField final : public VectorField {
 public:
  using ValueFn = std::function<Vec(const Vec&)>;
  using DerivFn = std::function<Vec(const Vec&, const Vec&)>;
  using SecondFn = std::function<Vec(const Vec&, const Vec&, const Vec&)>;

  FunctionField(int ambient_dim, ValueFn value, DerivFn derivative = nullptr,
                SecondFn second = nullptr)
      : dim_(ambient_dim),
        value_(std::move(value)),
        derivative_(std::move(derivative)),
        second_(std::move(second)) {}

  int ambient_dim() const override { return dim_; }
  Vec value(const Vec& q) const override { return value_(q); }
  Vec derivative(const Vec& q, const Vec& dir) const override;
  Vec second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const override;
  bool analytic() const override { return static_cast<bool>(derivative_); }

 private:
  int dim_;
  ValueFn value_;
  DerivFn derivative_;
  SecondFn second_;
};

/// Hides any analytic derivatives of the wrapped field so every derivative
/// goes through central differences.
class FiniteDifferenceField final : public VectorField {
 public:
  explicit FiniteDifferenceField(FieldPtr inner) : inner_(std::move(inner)) {}
  int ambient_dim() const override { return inner_->ambient_dim(); }
  Vec value(const Vec& q) const override { return inner_->value(q); }

 private:
  FieldPtr inner_;
};

/// sum_k c_k E_k with constant coefficients.
class LinearCombinationField final : public VectorField {
 public:
  LinearCombinationField(FrameFields fields, std::vector<double> coeffs);
  int ambient_dim() const override { return fields_.front()->ambient_dim(); }
  Vec value(const Vec& q) const override;
  Vec derivative(const Vec& q, const Vec& dir) const override;
  Vec second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const override;
  bool analytic() const override { return analytic_; }

 private:
  FrameFields fields_;
  std::vector<double> coeffs_;
  bool analytic_;
};

/// sum_k c_k(q) E_k(q) with smooth scalar coefficients.
class CoefficientField final : public VectorField {
 public:
  CoefficientField(FrameFields fields, std::vector<ScalarFunctionPtr> coeffs);
  int ambient_dim() const override { return fields_.front()->ambient_dim(); }
  Vec value(const Vec& q) const override;
  Vec derivative(const Vec& q, const Vec& dir) const override;
  Vec second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const override;
  bool analytic() const override { return analytic_; }

 private:
  FrameFields fields_;
  std::vector<ScalarFunctionPtr> coeffs_;
  bool analytic_;
};

/// X / |X|, with the Euclidean ambient norm (the induced metric).
class NormalizedField final : public VectorField {
 public:
  explicit NormalizedField(FieldPtr inner) : inner_(std::move(inner)) {}
  int ambient_dim() const override { return inner_->ambient_dim(); }
  Vec value(const Vec& q) const override;
  Vec derivative(const Vec& q, const Vec& dir) const override;
  Vec second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const override;
  bool analytic() const override { return inner_->analytic(); }

 private:
  FieldPtr inner_;
};

/// a X + b Y
class AffineSumField final : public VectorField {
 public:
  AffineSumField(FieldPtr x, double a, FieldPtr y, double b)
      : x_(std::move(x)), y_(std::move(y)), a_(a), b_(b) {}
  int ambient_dim() const override { return x_->ambient_dim(); }
  Vec value(const Vec& q) const override { return a_ * x_->value(q) + b_ * y_->value(q); }
  Vec derivative(const Vec& q, const Vec& d) const override {
    return a_ * x_->derivative(q, d) + b_ * y_->derivative(q, d);
  }
  Vec second_derivative(const Vec& q, const Vec& d1, const Vec& d2) const override {
    return a_ * x_->second_derivative(q, d1, d2) + b_ * y_->second_derivative(q, d1, d2);
  }
  bool analytic() const override { return x_->analytic() && y_->analytic(); }

 private:
  FieldPtr x_, y_;
  double a_, b_;
};

/// W - <W, X> X: the part of W orthogonal to a unit field X.
class OrthogonalPartField final : public VectorField {
 public:
  OrthogonalPartField(FieldPtr w, FieldPtr x) : w_(std::move(w)), x_(std::move(x)) {}
  int ambient_dim() const override { return w_->ambient_dim(); }
  Vec value(const Vec& q) const override;
  Vec derivative(const Vec& q, const Vec& dir) const override;
  bool analytic() const override { return w_->analytic() && x_->analytic(); }

 private:
  FieldPtr w_, x_;
};

/// (X + t V) / |X + t V|: a variation of X through unit fields.
FieldPtr unit_variation(FieldPtr x, FieldPtr v, double t);

}  // namespace hvf
