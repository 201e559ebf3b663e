#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hvf/field.hpp"
#include "hvf/linalg.hpp"

namespace hvf {

// Vectors whose tangency residual exceeds this are rejected, never projected.
inline constexpr double kTangencyTolerance = 1e-8;

struct TangentAtPoint {
  Vec base;
  Vec vec;
};

struct FrameAtPoint {
  Vec base;
  std::vector<Vec> vectors;
};

struct QuadratureNode {
  Vec point;
  double weight;
};

/// An isometrically embedded Riemannian manifold M^n in R^m.
class Manifold {
 public:
  enum class Kind { RoundSphere, FlatTorus };

  Manifold(int dim, int ambient_dim);
  virtual ~Manifold() = default;

  int dim() const { return dim_; }
  int ambient_dim() const { return ambient_dim_; }

  virtual Kind kind() const = 0;
  virtual std::string name() const = 0;

  virtual Vec project_point(const Vec& x) const = 0;
  /// Orthogonal projector onto T_qM; defined (smoothly) off M as well.
  virtual Mat tangent_projector(const Vec& q) const = 0;
  virtual Vec project_tangent(const Vec& q, const Vec& v) const;
  /// (D_dir P)(q) v
  virtual Vec projector_derivative(const Vec& q, const Vec& dir, const Vec& v) const = 0;

  /// True if frame_fields() is independent of the anchor point.
  virtual bool has_global_frame() const = 0;
  /// Orthonormal frame fields, smooth on a neighbourhood of p.
  virtual FrameFields frame_fields(const Vec& p) const = 0;
  FrameAtPoint frame(const Vec& p) const;

  virtual std::vector<QuadratureNode> quadrature(int level) const = 0;
  virtual double volume() const = 0;

  virtual Vec random_point(std::mt19937_64& rng) const = 0;
  Vec random_tangent(const Vec& p, std::mt19937_64& rng) const;

  double tangency_residual(const Vec& p, const Vec& v) const;
  void require_tangent(const Vec& p, const Vec& v, const char* what) const;
  TangentAtPoint make_tangent(const Vec& p, const Vec& v) const;

 private:
  int dim_;
  int ambient_dim_;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

/// Round sphere S^n(r) in R^{n+1}. For n = 3 the frame is the global
/// quaternionic frame X_i = J_i N.
class RoundSphere final : public Manifold {
 public:
  RoundSphere(int n, double radius);

  Kind kind() const override { return Kind::RoundSphere; }
  std::string name() const override;
  double radius() const { return radius_; }

  Vec project_point(const Vec& x) const override;
  Mat tangent_projector(const Vec& q) const override;
  Vec project_tangent(const Vec& q, const Vec& v) const override;
  Vec projector_derivative(const Vec& q, const Vec& dir, const Vec& v) const override;

  bool has_global_frame() const override { return dim() == 3; }
  FrameFields frame_fields(const Vec& p) const override;

  std::vector<QuadratureNode> quadrature(int level) const override;
  double volume() const override;
  Vec random_point(std::mt19937_64& rng) const override;

 private:
  double radius_;
  FrameFields hopf_;
};

/// Flat torus R^n / (L_1 Z x ... x L_n Z). Points live in the covering space
/// R^n; fields are expected to be periodic.
class FlatTorus final : public Manifold {
 public:
  explicit FlatTorus(std::vector<double> periods);

  Kind kind() const override { return Kind::FlatTorus; }
  std::string name() const override;
  const std::vector<double>& periods() const { return periods_; }

  Vec project_point(const Vec& x) const override { return x; }
  Mat tangent_projector(const Vec& q) const override;
  Vec project_tangent(const Vec&, const Vec& v) const override { return v; }
  Vec projector_derivative(const Vec& q, const Vec&, const Vec&) const override {
    return Vec::Zero(q.size());
  }

  bool has_global_frame() const override { return true; }
  FrameFields frame_fields(const Vec& p) const override;

  /// Uniform grid with 2*level+1 nodes per period.
  std::vector<QuadratureNode> quadrature(int level) const override;
  static int grid_size(int level) { return 2 * level + 1; }
  double volume() const override;
  Vec random_point(std::mt19937_64& rng) const override;

 private:
  std::vector<double> periods_;
  FrameFields frame_;
};

/// The complex structures J_1, J_2, J_3 on R^4 (i = 1..3).
Mat quaternionic_structure(int i);
/// Hopf field X_i = J_i N on S^3(r), extended linearly to R^4.
FieldPtr hopf_field(int i, double radius = 1.0);

std::shared_ptr<const RoundSphere> make_sphere(int n, double radius = 1.0);
std::shared_ptr<const FlatTorus> make_torus(int n, double period = 1.0);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int m, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace hvf
