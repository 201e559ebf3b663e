#include "hvf/discrete_field.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>

#include "hvf/error.hpp"
#include "hvf/polynomial.hpp"

namespace hvf {

namespace {

// Cardinal function of the N-point periodic grid and its first two derivatives;
// cos(k w s) and sin(k w s) by the angle-addition recurrence.
void cardinal(int grid, double period, double s, double& l0, double& l1, double& l2) {
  const int half = (grid - 1) / 2;
  const double omega = 2.0 * std::numbers::pi / period;
  const double c1 = std::cos(omega * s), s1 = std::sin(omega * s);
  double ck = 1.0, sk = 0.0;
  double c = 1.0, d1 = 0.0, d2 = 0.0;
  for (int k = 1; k <= half; ++k) {
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    const double ks = k * omega;
    c += 2.0 * ck;
    d1 -= 2.0 * ks * sk;
    d2 -= 2.0 * ks * ks * ck;
  }
  l0 = c / grid;
  l1 = d1 / grid;
  l2 = d2 / grid;
}

// Jets are requested repeatedly at one point (value, gradient and Hessian of
// every coefficient); a few recent results are kept per thread, keyed by a
// never-reused interpolant id.
struct JetEntry {
  std::uint64_t id = 0;
  Vec q;
  double v = 0.0;
  Vec g;
  Mat h;
};

constexpr std::size_t kJetCacheSize = 8;

std::atomic<std::uint64_t> next_interpolant_id{1};

std::size_t grid_total(int grid, int dim) {
  std::size_t t = 1;
  for (int d = 0; d < dim; ++d) t *= static_cast<std::size_t>(grid);
  return t;
}

std::vector<Polynomial::Exponents> monomials(int vars, int max_degree) {
  std::vector<Polynomial::Exponents> out;
  Polynomial::Exponents e(static_cast<std::size_t>(vars), 0);
  // Odometer over exponent vectors with total degree <= max_degree.
  for (;;) {
    int s = 0;
    for (int k : e) s += k;
    if (s <= max_degree) out.push_back(e);
    std::size_t k = 0;
    while (k < e.size()) {
      if (++e[k] <= max_degree) break;
      e[k] = 0;
      ++k;
    }
    if (k == e.size()) break;
  }
  return out;
}

double monomial_value(const Polynomial::Exponents& e, const Vec& q) {
  double v = 1.0;
  for (std::size_t k = 0; k < e.size(); ++k)
    for (int j = 0; j < e[k]; ++j) v *= q(static_cast<int>(k));
  return v;
}

constexpr int kSphereFitDegree = 4;

}  // namespace

TrigInterpolant::TrigInterpolant(std::vector<double> periods, int grid, std::vector<double> values)
    : periods_(std::move(periods)),
      grid_(grid),
      values_(std::move(values)),
      id_(next_interpolant_id.fetch_add(1)) {
  if (grid_ < 1 || grid_ % 2 == 0) throw PreconditionError("trig interpolant needs an odd grid");
  if (values_.size() != grid_total(grid_, static_cast<int>(periods_.size())))
    throw PreconditionError("trig interpolant: value count does not match the grid");
}

void TrigInterpolant::jet(const Vec& q, double& v, Vec& g, Mat& h) const {
  thread_local std::array<JetEntry, kJetCacheSize> cache;
  thread_local std::size_t next = 0;
  for (const auto& e : cache)
    if (e.id == id_ && e.q.size() == q.size() && e.q == q) {
      v = e.v;
      g = e.g;
      h = e.h;
      return;
    }
  compute_jet(q, v, g, h);
  JetEntry& e = cache[next];
  next = (next + 1) % kJetCacheSize;
  e = {id_, q, v, g, h};
}

// Separable contraction, one axis at a time. A partial result is tagged with
// the derivative orders already applied (total order <= 2) and holds the
// remaining axes' values.
void TrigInterpolant::compute_jet(const Vec& q, double& v, Vec& g, Mat& h) const {
  const int n = static_cast<int>(periods_.size());
  const auto N = static_cast<std::size_t>(grid_);
  struct Part {
    std::vector<int> orders;
    std::vector<double> data;
  };
  std::vector<Part> parts{{std::vector<int>(static_cast<std::size_t>(n), 0), values_}};
  std::vector<double> L[3];
  for (auto& l : L) l.resize(N);
  for (int d = 0; d < n; ++d) {
    const double period = periods_[static_cast<std::size_t>(d)];
    for (std::size_t j = 0; j < N; ++j)
      cardinal(grid_, period, q(d) - period * static_cast<double>(j) / grid_, L[0][j], L[1][j],
               L[2][j]);
    std::vector<Part> next;
    for (const auto& p : parts) {
      int used = 0;
      for (int o : p.orders) used += o;
      const std::size_t rest = p.data.size() / N;
      for (int k = 0; k + used <= 2; ++k) {
        Part c{p.orders, std::vector<double>(rest, 0.0)};
        c.orders[static_cast<std::size_t>(d)] = k;
        const auto& l = L[k];
        for (std::size_t r = 0; r < rest; ++r) {
          const double* row = p.data.data() + r * N;
          double acc = 0.0;
          for (std::size_t j = 0; j < N; ++j) acc += l[j] * row[j];
          c.data[r] = acc;
        }
        next.push_back(std::move(c));
      }
    }
    parts = std::move(next);
  }
  v = 0.0;
  g = Vec::Zero(n);
  h = Mat::Zero(n, n);
  for (const auto& p : parts) {
    const double x = p.data[0];
    std::vector<int> axes;
    for (int d = 0; d < n; ++d)
      for (int o = 0; o < p.orders[static_cast<std::size_t>(d)]; ++o) axes.push_back(d);
    if (axes.empty())
      v = x;
    else if (axes.size() == 1)
      g(axes[0]) = x;
    else {
      h(axes[0], axes[1]) = x;
      h(axes[1], axes[0]) = x;
    }
  }
}

double TrigInterpolant::value(const Vec& q) const {
  double v;
  Vec g;
  Mat h;
  jet(q, v, g, h);
  return v;
}

Vec TrigInterpolant::gradient(const Vec& q) const {
  double v;
  Vec g;
  Mat h;
  jet(q, v, g, h);
  return g;
}

double TrigInterpolant::hessian(const Vec& q, const Vec& d1, const Vec& d2) const {
  double v;
  Vec g;
  Mat h;
  jet(q, v, g, h);
  return d1.dot(h * d2);
}

Eigen::MatrixXd periodic_derivative_matrix(int grid, double period, int order) {
  Eigen::MatrixXd d(grid, grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      double l0, l1, l2;
      cardinal(grid, period, period * (i - j) / grid, l0, l1, l2);
      d(i, j) = order == 0 ? l0 : order == 1 ? l1 : l2;
    }
  return d;
}

// ---------------------------------------------------------------------------

DiscreteUnitField::DiscreteUnitField(ManifoldPtr m, int level, std::vector<Vec> coefficients)
    : m_(std::move(m)), level_(level), nodes_(m_->quadrature(level)), coeffs_(std::move(coefficients)) {
  if (!m_->has_global_frame()) throw UnsupportedError("discrete fields need a global frame");
  if (coeffs_.size() != nodes_.size())
    throw PreconditionError("discrete field: one coefficient vector per node is required");
  const int n = m_->dim();
  for (Vec& a : coeffs_) {
    if (a.size() != n) throw PreconditionError("discrete field: coefficient size must be dim");
    const double s = a.norm();
    if (!(s > 0.0)) throw PreconditionError("discrete field: zero coefficient vector");
    a /= s;
  }
  for (const auto& node : nodes_) node_frames_.push_back(m_->frame(node.point).vectors);

  const FrameFields frame = m_->frame_fields(nodes_.front().point);
  std::vector<ScalarFunctionPtr> comps;
  if (m_->kind() == Manifold::Kind::FlatTorus) {
    const auto& torus = static_cast<const FlatTorus&>(*m_);
    const int grid = FlatTorus::grid_size(level_);
    for (int c = 0; c < n; ++c) {
      std::vector<double> vals;
      vals.reserve(coeffs_.size());
      for (const Vec& a : coeffs_) vals.push_back(a(c));
      comps.push_back(std::make_shared<TrigInterpolant>(torus.periods(), grid, std::move(vals)));
    }
  } else {
    const int amb = m_->ambient_dim();
    const auto mons = monomials(amb, kSphereFitDegree);
    const auto rows = static_cast<Eigen::Index>(nodes_.size());
    const auto cols = static_cast<Eigen::Index>(mons.size());
    Eigen::MatrixXd a(rows, cols);
    Eigen::MatrixXd rhs(rows, n);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& node = nodes_[static_cast<std::size_t>(r)];
      const double sw = std::sqrt(node.weight);
      for (Eigen::Index c = 0; c < cols; ++c)
        a(r, c) = sw * monomial_value(mons[static_cast<std::size_t>(c)], node.point);
      for (int c = 0; c < n; ++c) rhs(r, c) = sw * coeffs_[static_cast<std::size_t>(r)](c);
    }
    const Eigen::MatrixXd sol = a.completeOrthogonalDecomposition().solve(rhs);
    std::vector<std::string> names;
    std::vector<PolynomialFunction::Variable> vars;
    for (int k = 0; k < amb; ++k) {
      names.push_back("x" + std::to_string(k + 1));
      vars.push_back({PolynomialFunction::Feature::Identity, k, 0.0});
    }
    for (int c = 0; c < n; ++c) {
      Polynomial p(names);
      for (Eigen::Index k = 0; k < cols; ++k) p.add_term(mons[static_cast<std::size_t>(k)], sol(k, c));
      comps.push_back(std::make_shared<PolynomialFunction>(std::move(p), vars));
    }
  }
  field_ = std::make_shared<NormalizedField>(
      std::make_shared<CoefficientField>(frame, std::move(comps)));
}

DiscreteUnitField DiscreteUnitField::sample(ManifoldPtr m, const VectorField& x, int level) {
  const auto nodes = m->quadrature(level);
  std::vector<Vec> coeffs;
  coeffs.reserve(nodes.size());
  for (const auto& node : nodes) {
    const Vec xv = x.value(node.point);
    const auto frame = m->frame(node.point).vectors;
    Vec a(m->dim());
    for (int k = 0; k < m->dim(); ++k) a(k) = frame[static_cast<std::size_t>(k)].dot(xv);
    coeffs.push_back(a);
  }
  return DiscreteUnitField(std::move(m), level, std::move(coeffs));
}

DiscreteUnitField DiscreteUnitField::random(ManifoldPtr m, int level, std::uint64_t seed,
                                            double amplitude) {
  if (!(amplitude > 0.0 && amplitude < 1.0))
    throw PreconditionError("random field amplitude must lie in (0, 1)");
  const int n = m->dim();
  const int amb = m->ambient_dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec c0(n);
  for (int k = 0; k < n; ++k) c0(k) = gauss(rng);
  c0.normalize();

  // Perturbation: sum over modes of A_j cos(2 pi k_j.x / L) + B_j sin(...) on a
  // torus, a linear map of the ambient point on a sphere; scaled so that its
  // size stays below `amplitude`, hence c0 + pert never vanishes.
  std::vector<Vec> dirs;
  std::vector<Vec> amps;
  const bool torus = m->kind() == Manifold::Kind::FlatTorus;
  const int modes = torus ? 2 * n : amb;
  for (int j = 0; j < modes; ++j) {
    Vec kvec = Vec::Zero(amb);
    if (torus) {
      kvec(j % n) = 1.0;
      if (j >= n) kvec((j + 1) % n) = (j % 2 == 0) ? 1.0 : -1.0;
    } else {
      kvec(j) = 1.0;
    }
    dirs.push_back(kvec);
    Vec a(2 * n);
    for (int k = 0; k < 2 * n; ++k) a(k) = gauss(rng);
    amps.push_back(a);
  }
  double bound = 0.0;
  for (const Vec& a : amps) bound += a.head(n).norm() + a.tail(n).norm();
  const double scale = amplitude / bound;

  const auto nodes = m->quadrature(level);
  std::vector<double> periods;
  if (torus) periods = static_cast<const FlatTorus&>(*m).periods();
  std::vector<Vec> coeffs;
  for (const auto& node : nodes) {
    Vec a = c0;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      if (torus) {
        double phase = 0.0;
        for (int d = 0; d < n; ++d)
          phase += 2.0 * std::numbers::pi * dirs[j](d) * node.point(d) / periods[static_cast<std::size_t>(d)];
        a += scale * (std::cos(phase) * amps[j].head(n) + std::sin(phase) * amps[j].tail(n));
      } else {
        // |p| = r; a linear function bounded by the amplitude scale
        const double t = dirs[j].dot(node.point) / node.point.norm();
        a += scale * t * amps[j].head(n);
      }
    }
    coeffs.push_back(a);
  }
  return DiscreteUnitField(std::move(m), level, std::move(coeffs));
}

Vec DiscreteUnitField::node_value(std::size_t k) const {
  const auto& frame = node_frames_[k];
  Vec v = Vec::Zero(m_->ambient_dim());
  for (std::size_t c = 0; c < frame.size(); ++c) v += coeffs_[k](static_cast<int>(c)) * frame[c];
  return v;
}

double DiscreteUnitField::max_unit_defect() const {
  double d = 0.0;
  for (const Vec& a : coeffs_) d = std::max(d, std::abs(a.squaredNorm() - 1.0));
  return d;
}

}  // namespace hvf
