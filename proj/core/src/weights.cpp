#include "hvf/weights.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "hvf/error.hpp"
#include "hvf/geometry.hpp"

namespace hvf {

WeightTriple::WeightTriple(ManifoldPtr m, double alpha_min)
    : m_(std::move(m)), alpha_min_(alpha_min) {
  if (!m_) throw PreconditionError("weights need a manifold");
  if (!(alpha_min_ > 0.0)) throw PreconditionError("alpha_min must be positive");
}

void WeightTriple::check(const WeightValues& w) const {
  const double det = w.alpha * w.delta - w.sigma * w.sigma;
  if (!(std::abs(det - 1.0) <= 1e-10 * std::max(1.0, std::abs(w.alpha * w.delta)))) {
    std::ostringstream os;
    os << "weight invariant violated: alpha*delta - sigma^2 = " << det;
    throw InvariantError(os.str());
  }
  if (!(w.alpha >= alpha_min_)) {
    std::ostringstream os;
    os << "alpha = " << w.alpha << " is below alpha_min = " << alpha_min_;
    throw InvariantError(os.str());
  }
}

WeightValues WeightTriple::checked_values(const BundlePoint& b) const {
  const WeightValues w = values(b);
  check(w);
  return w;
}

WeightJet WeightTriple::jet(const BundlePoint& b) const {
  const Manifold& m = *m_;
  const int dim = m.ambient_dim();
  WeightJet j{values(b),
              {Vec::Zero(dim), Vec::Zero(dim)},
              {Vec::Zero(dim), Vec::Zero(dim)},
              {Vec::Zero(dim), Vec::Zero(dim)}};
  const auto fa = [this](const BundlePoint& c) { return values(c).alpha; };
  const auto fd = [this](const BundlePoint& c) { return values(c).delta; };
  const auto fs = [this](const BundlePoint& c) { return values(c).sigma; };
  for (const Vec& e : m.frame(b.base).vectors) {
    const SplitTangent eh = SplitTangent::horizontal(e);
    const SplitTangent ev = SplitTangent::vertical(e);
    j.alpha.h += tm_derivative(m, fa, b, eh) * e;
    j.alpha.v += tm_derivative(m, fa, b, ev) * e;
    j.delta.h += tm_derivative(m, fd, b, eh) * e;
    j.delta.v += tm_derivative(m, fd, b, ev) * e;
    j.sigma.h += tm_derivative(m, fs, b, eh) * e;
    j.sigma.v += tm_derivative(m, fs, b, ev) * e;
  }
  return j;
}

WeightJet SasakiWeights::jet(const BundlePoint& b) const {
  const int dim = static_cast<int>(b.base.size());
  const Differential zero{Vec::Zero(dim), Vec::Zero(dim)};
  return {{1.0, 1.0, 0.0}, zero, zero, zero};
}

// ---------------------------------------------------------------------------

std::vector<std::string> frame_component_names(int n) {
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back("V" + std::to_string(k));
  return names;
}

FrameComponentWeights::FrameComponentWeights(ManifoldPtr m, std::string name, Polynomial alpha,
                                             Polynomial sigma, double alpha_min)
    : WeightTriple(std::move(m), alpha_min),
      name_(std::move(name)),
      alpha_(std::move(alpha)),
      sigma_(std::move(sigma)) {
  const int n = manifold()->dim();
  if (!manifold()->has_global_frame())
    throw UnsupportedError("frame-component weights need a global frame");
  if (alpha_.num_vars() != n || (sigma_.num_vars() != n && !sigma_.variables().empty()))
    throw PreconditionError("weight polynomials must use V1..Vn");
  if (sigma_.variables().empty()) sigma_ = Polynomial(frame_component_names(n));
  for (int k = 0; k < n; ++k) {
    dalpha_.push_back(alpha_.derivative(k));
    dsigma_.push_back(sigma_.derivative(k));
  }
}

std::vector<double> FrameComponentWeights::components(const BundlePoint& b) const {
  std::vector<double> v;
  for (const Vec& e : manifold()->frame(b.base).vectors) v.push_back(e.dot(b.fiber));
  return v;
}

WeightValues FrameComponentWeights::values(const BundlePoint& b) const {
  const auto v = components(b);
  const double a = alpha_(v);
  const double s = sigma_(v);
  return {a, (1.0 + s * s) / a, s};
}

WeightJet FrameComponentWeights::jet(const BundlePoint& b) const {
  const Manifold& m = *manifold();
  const int n = m.dim();
  const int dim = m.ambient_dim();
  const FrameFields fields = m.frame_fields(b.base);
  std::vector<Vec> e;
  for (const auto& f : fields) e.push_back(f->value(b.base));
  std::vector<double> comp;
  for (const Vec& ek : e) comp.push_back(ek.dot(b.fiber));

  // dV^k: vertical part E_k; horizontal part sum_j g(u, nabla_{E_j} E_k) E_j.
  std::vector<Vec> dh_comp(static_cast<std::size_t>(n), Vec::Zero(dim));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const Vec nabla = covariant_derivative(m, *fields[static_cast<std::size_t>(k)], b.base,
                                             e[static_cast<std::size_t>(j)]);
      dh_comp[static_cast<std::size_t>(k)] += b.fiber.dot(nabla) * e[static_cast<std::size_t>(j)];
    }

  const double a = alpha_(comp);
  const double s = sigma_(comp);
  const double d = (1.0 + s * s) / a;
  Differential da{Vec::Zero(dim), Vec::Zero(dim)};
  Differential ds{Vec::Zero(dim), Vec::Zero(dim)};
  for (int k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double pa = dalpha_[kk](comp);
    const double ps = dsigma_[kk](comp);
    da.h += pa * dh_comp[kk];
    da.v += pa * e[kk];
    ds.h += ps * dh_comp[kk];
    ds.v += ps * e[kk];
  }
  // delta = (1 + sigma^2) / alpha
  const Differential dd{(2.0 * s / a) * ds.h - (d / a) * da.h,
                        (2.0 * s / a) * ds.v - (d / a) * da.v};
  return {{a, d, s}, da, dd, ds};
}

// ---------------------------------------------------------------------------

CustomWeights::CustomWeights(ManifoldPtr m, std::string name, Fn alpha, Fn sigma,
                             bool sigma_vanishes, double alpha_min)
    : WeightTriple(std::move(m), alpha_min),
      name_(std::move(name)),
      alpha_(std::move(alpha)),
      sigma_(std::move(sigma)),
      sigma_vanishes_(sigma_vanishes) {}

WeightValues CustomWeights::values(const BundlePoint& b) const {
  const double a = alpha_(b);
  const double s = sigma_ ? sigma_(b) : 0.0;
  return {a, (1.0 + s * s) / a, s};
}

// ---------------------------------------------------------------------------

WeightPtr make_sasaki(ManifoldPtr m) { return std::make_shared<SasakiWeights>(std::move(m)); }

WeightPtr make_example58(ManifoldPtr m) {
  const auto names = frame_component_names(m->dim());
  return std::make_shared<FrameComponentWeights>(m, "example58",
                                                 Polynomial::parse("V1^2/2 + 1", names),
                                                 Polynomial(names));
}

WeightPtr make_polynomial_weights(ManifoldPtr m, const std::string& alpha,
                                  const std::string& sigma, std::string name) {
  const auto names = frame_component_names(m->dim());
  return std::make_shared<FrameComponentWeights>(m, std::move(name),
                                                 Polynomial::parse(alpha, names),
                                                 Polynomial::parse(sigma, names));
}

WeightPtr make_random_polynomial_weights(ManifoldPtr m, std::uint64_t seed) {
  const int n = m->dim();
  const auto names = frame_component_names(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, 1.0), sym(-1.0, 1.0);
  Polynomial alpha = Polynomial::constant(names, 1.0);
  Polynomial lin = Polynomial::constant(names, sym(rng));
  for (int k = 0; k < n; ++k) {
    const Polynomial vk = Polynomial::variable(names, k);
    alpha = alpha + vk.pow(2) * pos(rng);
    lin = lin + vk * sym(rng);
  }
  alpha = alpha + lin.pow(2) * 0.5;
  return std::make_shared<FrameComponentWeights>(m, "random-polynomial", alpha, Polynomial(names));
}

WeightPtr make_random_sigma_weights(ManifoldPtr m, std::uint64_t seed) {
  const int n = m->dim();
  const auto names = frame_component_names(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, 1.0), sym(-1.0, 1.0);
  Polynomial alpha = Polynomial::constant(names, 1.0);
  Polynomial sigma = Polynomial::constant(names, 0.5 * sym(rng));
  for (int k = 0; k < n; ++k) {
    const Polynomial vk = Polynomial::variable(names, k);
    alpha = alpha + vk.pow(2) * pos(rng);
    sigma = sigma + vk * (0.5 * sym(rng));
  }
  return std::make_shared<FrameComponentWeights>(m, "random-sigma", alpha, sigma);
}

}  // namespace hvf
