#pragma once

#include <cstdint>

#include "hvf/manifold.hpp"

namespace hvf {

/// Trigonometric interpolant of values on the uniform torus grid with N = 2L+1
/// nodes per period (node index j_0 + N (j_1 + N j_2 ...)).
class TrigInterpolant final : public ScalarFunction {
 public:
  TrigInterpolant(std::vector<double> periods, int grid, std::vector<double> values);

  double value(const Vec& q) const override;
  Vec gradient(const Vec& q) const override;
  double hessian(const Vec& q, const Vec& d1, const Vec& d2) const override;

  /// Value, gradient and Hessian matrix in one pass.
  void jet(const Vec& q, double& v, Vec& g, Mat& h) const;

 private:
  void compute_jet(const Vec& q, double& v, Vec& g, Mat& h) const;

  std::vector<double> periods_;
  int grid_;
  std::vector<double> values_;
  std::uint64_t id_;
};

/// Periodic cardinal-function derivative matrices on an N-point grid:
/// D1(i, j) = l'(x_i - x_j), D2(i, j) = l''(x_i - x_j).
Eigen::MatrixXd periodic_derivative_matrix(int grid, double period, int order);

/// A unit vector field stored as frame coefficients at quadrature nodes.
/// On a torus it is the normalized trigonometric interpolant; on S^3 the
/// coefficients against the global frame are fitted by weighted least squares
/// with polynomials of degree <= 4 in the ambient coordinates, then normalized.
class DiscreteUnitField {
 public:
  DiscreteUnitField(ManifoldPtr m, int level, std::vector<Vec> coefficients);

  static DiscreteUnitField sample(ManifoldPtr m, const VectorField& x, int level);
  /// normalize(c0 + low-mode perturbation of size < amplitude < 1), seeded.
  static DiscreteUnitField random(ManifoldPtr m, int level, std::uint64_t seed,
                                  double amplitude = 0.5);

  const ManifoldPtr& manifold() const { return m_; }
  int level() const { return level_; }
  const std::vector<QuadratureNode>& nodes() const { return nodes_; }
  const std::vector<Vec>& coefficients() const { return coeffs_; }
  /// Ambient vector at node k.
  Vec node_value(std::size_t k) const;
  /// The smooth interpolating unit field.
  const FieldPtr& field() const { return field_; }

  /// max_k | |a_k|^2 - 1 |
  double max_unit_defect() const;

 private:
  ManifoldPtr m_;
  int level_;
  std::vector<QuadratureNode> nodes_;
  std::vector<Vec> coeffs_;
  std::vector<std::vector<Vec>> node_frames_;
  FieldPtr field_;
};

}  // namespace hvf
