#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "hvf/bundle_point.hpp"
#include "hvf/polynomial.hpp"

namespace hvf {

struct WeightValues {
  double alpha;
  double delta;
  double sigma;
};

/// Differential of a scalar function f on TM at b, as two M-tangent vectors:
/// g(h, W) = W^h(f) and g(v, W) = W^v(f).
struct Differential {
  Vec h;
  Vec v;
  double pair(const SplitTangent& a) const { return h.dot(a.h) + v.dot(a.v); }
};

struct WeightJet {
  WeightValues value;
  Differential alpha;
  Differential delta;
  Differential sigma;
};

/// Scalar fields alpha, delta, sigma on TM with alpha*delta - sigma^2 = 1.
class WeightTriple {
 public:
  explicit WeightTriple(ManifoldPtr m, double alpha_min = 1e-6);
  virtual ~WeightTriple() = default;

  virtual std::string name() const = 0;
  virtual WeightValues values(const BundlePoint& b) const = 0;
  /// Values and differentials; the default uses central differences on TM.
  virtual WeightJet jet(const BundlePoint& b) const;
  /// True when sigma is identically zero.
  virtual bool sigma_vanishes() const = 0;
  virtual bool analytic() const { return false; }

  const ManifoldPtr& manifold() const { return m_; }
  double alpha_min() const { return alpha_min_; }

  /// Throws InvariantError unless alpha*delta - sigma^2 = 1 (1e-10) and alpha >= alpha_min.
  void check(const WeightValues& w) const;
  WeightValues checked_values(const BundlePoint& b) const;

 private:
  ManifoldPtr m_;
  double alpha_min_;
};

using WeightPtr = std::shared_ptr<const WeightTriple>;

/// alpha = delta = 1, sigma = 0.
class SasakiWeights final : public WeightTriple {
 public:
  explicit SasakiWeights(ManifoldPtr m) : WeightTriple(std::move(m)) {}
  std::string name() const override { return "sasaki"; }
  WeightValues values(const BundlePoint&) const override { return {1.0, 1.0, 0.0}; }
  WeightJet jet(const BundlePoint& b) const override;
  bool sigma_vanishes() const override { return true; }
  bool analytic() const override { return true; }
};

/// alpha and sigma are polynomials in the frame components V^k = g(u, E_k(p)) of
/// the fiber against the manifold's global frame; delta = (1 + sigma^2) / alpha.
/// Vertical differentials are exact (dV^k(Y^v) = g(Y, E_k)); horizontal ones use
/// dV^k(Y^h) = g(u, nabla_Y E_k), evaluated from the frame rather than assumed.
class FrameComponentWeights final : public WeightTriple {
 public:
  FrameComponentWeights(ManifoldPtr m, std::string name, Polynomial alpha, Polynomial sigma,
                        double alpha_min = 1e-6);

  std::string name() const override { return name_; }
  WeightValues values(const BundlePoint& b) const override;
  WeightJet jet(const BundlePoint& b) const override;
  bool sigma_vanishes() const override { return sigma_.is_zero(); }
  bool analytic() const override { return true; }

  const Polynomial& alpha_polynomial() const { return alpha_; }
  const Polynomial& sigma_polynomial() const { return sigma_; }

  /// Frame components of u at p.
  std::vector<double> components(const BundlePoint& b) const;

 private:
  std::string name_;
  Polynomial alpha_, sigma_;
  std::vector<Polynomial> dalpha_, dsigma_;
};

/// Weights from arbitrary callables; all differentials by finite differences.
class CustomWeights final : public WeightTriple {
 public:
  using Fn = std::function<double(const BundlePoint&)>;
  CustomWeights(ManifoldPtr m, std::string name, Fn alpha, Fn sigma, bool sigma_vanishes,
                double alpha_min = 1e-6);
  std::string name() const override { return name_; }
  WeightValues values(const BundlePoint& b) const override;
  bool sigma_vanishes() const override { return sigma_vanishes_; }

 private:
  std::string name_;
  Fn alpha_, sigma_;
  bool sigma_vanishes_;
};

/// Variable names V1..Vn for frame-component polynomials.
std::vector<std::string> frame_component_names(int n);

WeightPtr make_sasaki(ManifoldPtr m);
/// alpha = (V^1)^2 / 2 + 1, delta = 1 / alpha, sigma = 0.
WeightPtr make_example58(ManifoldPtr m);
/// Parses alpha and sigma as polynomials in V1..Vn.
WeightPtr make_polynomial_weights(ManifoldPtr m, const std::string& alpha,
                                  const std::string& sigma, std::string name = "polynomial");
/// alpha = 1 + sum a_k (V^k)^2 + (sum c_k V^k + d)^2 / 2 >= 1, sigma = 0, seeded.
WeightPtr make_random_polynomial_weights(ManifoldPtr m, std::uint64_t seed);
/// Like the above but with a nonzero linear-plus-constant sigma.
WeightPtr make_random_sigma_weights(ManifoldPtr m, std::uint64_t seed);

}  // namespace hvf
