#include "hvf/manifold.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hvf/error.hpp"

namespace hvf {

namespace {

void require_level(int level) {
  if (level < 1) throw PreconditionError("quadrature level must be >= 1");
}

// Gram-Schmidt on the projections of fixed ambient vectors; smooth wherever
// the projections stay independent.
std::vector<Vec> sphere_gram_schmidt(const Vec& q, const std::vector<Vec>& seeds) {
  std::vector<Vec> out;
  out.reserve(seeds.size());
  for (const Vec& s : seeds) {
    Vec v = s - q * (q.dot(s) / q.squaredNorm());
    for (const Vec& e : out) v -= e.dot(v) * e;
    out.push_back(v / v.norm());
  }
  return out;
}

}  // namespace

Manifold::Manifold(int dim, int ambient_dim) : dim_(dim), ambient_dim_(ambient_dim) {
  if (dim < 2) throw PreconditionError("manifold dimension must be >= 2");
  if (ambient_dim < dim || ambient_dim > kMaxAmbient)
    throw PreconditionError("unsupported ambient dimension");
}

Vec Manifold::project_tangent(const Vec& q, const Vec& v) const {
  return tangent_projector(q) * v;
}

FrameAtPoint Manifold::frame(const Vec& p) const {
  FrameAtPoint f{p, {}};
  for (const auto& e : frame_fields(p)) f.vectors.push_back(e->value(p));
  return f;
}

Vec Manifold::random_tangent(const Vec& p, std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(ambient_dim());
  for (int i = 0; i < ambient_dim(); ++i) v(i) = gauss(rng);
  return project_tangent(p, v);
}

double Manifold::tangency_residual(const Vec& p, const Vec& v) const {
  return (v - project_tangent(p, v)).norm();
}

void Manifold::require_tangent(const Vec& p, const Vec& v, const char* what) const {
  if (v.size() != ambient_dim())
    throw PreconditionError(std::string(what) + ": wrong ambient dimension");
  const double r = tangency_residual(p, v);
  if (!(r <= kTangencyTolerance * std::max(1.0, v.norm()))) {
    std::ostringstream os;
    os << what << ": vector is not tangent (residual " << r << ")";
    throw PreconditionError(os.str());
  }
}

TangentAtPoint Manifold::make_tangent(const Vec& p, const Vec& v) const {
  require_tangent(p, v, "make_tangent");
  return {p, v};
}

// ---------------------------------------------------------------------------

Mat quaternionic_structure(int i) {
  Mat j = Mat::Zero(4, 4);
  switch (i) {
    case 1:  // (v1,v2,v3,v4) -> (-v2, v1, -v4, v3)
      j(0, 1) = -1; j(1, 0) = 1; j(2, 3) = -1; j(3, 2) = 1;
      break;
    case 2:  // -> (v3, -v4, -v1, v2)
      j(0, 2) = 1; j(1, 3) = -1; j(2, 0) = -1; j(3, 1) = 1;
      break;
    case 3:  // -> (v4, v3, -v2, -v1)
      j(0, 3) = 1; j(1, 2) = 1; j(2, 1) = -1; j(3, 0) = -1;
      break;
    default:
      throw PreconditionError("quaternionic_structure: index must be 1, 2 or 3");
  }
  return j;
}

FieldPtr hopf_field(int i, double radius) {
  return std::make_shared<LinearField>(quaternionic_structure(i) / radius);
}

RoundSphere::RoundSphere(int n, double radius) : Manifold(n, n + 1), radius_(radius) {
  if (!(radius > 0.0)) throw PreconditionError("sphere radius must be positive");
  if (n == 3)
    for (int i = 1; i <= 3; ++i) hopf_.push_back(hopf_field(i, radius));
}

std::string RoundSphere::name() const {
  std::ostringstream os;
  os << "round-sphere(" << dim() << ", " << radius_ << ")";
  return os.str();
}

Vec RoundSphere::project_point(const Vec& x) const { return radius_ * x / x.norm(); }

Mat RoundSphere::tangent_projector(const Vec& q) const {
  const int m = ambient_dim();
  return Mat::Identity(m, m) - q * q.transpose() / q.squaredNorm();
}

Vec RoundSphere::project_tangent(const Vec& q, const Vec& v) const {
  return v - q * (q.dot(v) / q.squaredNorm());
}

Vec RoundSphere::projector_derivative(const Vec& q, const Vec& dir, const Vec& v) const {
  // P = I - q q^T / |q|^2
  const double s = q.squaredNorm();
  return -(dir * q.dot(v) + q * dir.dot(v)) / s + q * (2.0 * q.dot(v) * q.dot(dir) / (s * s));
}

FrameFields RoundSphere::frame_fields(const Vec& p) const {
  if (!hopf_.empty()) return hopf_;
  const int m = ambient_dim();
  int drop = 0;
  for (int j = 1; j < m; ++j)
    if (std::abs(p(j)) > std::abs(p(drop))) drop = j;
  std::vector<Vec> seeds;
  for (int j = 0; j < m; ++j)
    if (j != drop) seeds.push_back(unit_vector(m, j));
  FrameFields out;
  for (int k = 0; k < dim(); ++k) {
    out.push_back(std::make_shared<FunctionField>(m, [seeds, k](const Vec& q) {
      return sphere_gram_schmidt(q, seeds)[static_cast<std::size_t>(k)];
    }));
  }
  return out;
}

std::vector<QuadratureNode> RoundSphere::quadrature(int level) const {
  require_level(level);
  const double r = radius_;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<QuadratureNode> nodes;
  std::vector<double> x, w;
  const int m = 2 * level;
  const int k = 4 * level;
  if (dim() == 3) {
    // Hopf coordinates p = r (sin e cos a, sin e sin a, cos e cos b, cos e sin b)
    // with t = sin^2 e, so dvol = (r^3 / 2) dt da db and ambient polynomials
    // become polynomials in t: Gauss-Legendre in t is then exact.
    gauss_legendre(m, 0.0, 1.0, x, w);
    nodes.reserve(static_cast<std::size_t>(m * k * k));
    for (int i = 0; i < m; ++i) {
      const double se = std::sqrt(x[i]), ce = std::sqrt(1.0 - x[i]);
      const double wi = 0.5 * w[i] * r * r * r * (two_pi / k) * (two_pi / k);
      for (int a = 0; a < k; ++a) {
        const double xa = two_pi * a / k;
        for (int b = 0; b < k; ++b) {
          const double xb = two_pi * b / k;
          Vec p(4);
          p << r * se * std::cos(xa), r * se * std::sin(xa), r * ce * std::cos(xb),
              r * ce * std::sin(xb);
          nodes.push_back({p, wi});
        }
      }
    }
    return nodes;
  }
  if (dim() == 2) {
    gauss_legendre(m, -1.0, 1.0, x, w);
    for (int i = 0; i < m; ++i) {
      const double z = x[i], rho = std::sqrt(1.0 - z * z);
      for (int a = 0; a < k; ++a) {
        const double phi = two_pi * a / k;
        Vec p(3);
        p << r * rho * std::cos(phi), r * rho * std::sin(phi), r * z;
        nodes.push_back({p, w[i] * r * r * two_pi / k});
      }
    }
    return nodes;
  }
  throw UnsupportedError("sphere quadrature is available for n = 2 and n = 3 only");
}

double RoundSphere::volume() const {
  const double n = dim();
  return 2.0 * std::pow(std::numbers::pi, (n + 1.0) / 2.0) / std::tgamma((n + 1.0) / 2.0) *
         std::pow(radius_, n);
}

Vec RoundSphere::random_point(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(ambient_dim());
  for (int i = 0; i < ambient_dim(); ++i) v(i) = gauss(rng);
  return project_point(v);
}

// ---------------------------------------------------------------------------

FlatTorus::FlatTorus(std::vector<double> periods)
    : Manifold(static_cast<int>(periods.size()), static_cast<int>(periods.size())),
      periods_(std::move(periods)) {
  for (double l : periods_)
    if (!(l > 0.0)) throw PreconditionError("torus periods must be positive");
  const int n = dim();
  for (int k = 0; k < n; ++k) frame_.push_back(std::make_shared<ConstantField>(unit_vector(n, k)));
}

std::string FlatTorus::name() const {
  std::ostringstream os;
  os << "flat-torus(" << dim() << ";";
  for (double l : periods_) os << ' ' << l;
  os << ")";
  return os.str();
}

Mat FlatTorus::tangent_projector(const Vec& q) const {
  return Mat::Identity(q.size(), q.size());
}

FrameFields FlatTorus::frame_fields(const Vec&) const { return frame_; }

std::vector<QuadratureNode> FlatTorus::quadrature(int level) const {
  require_level(level);
  const int n = dim();
  const int g = grid_size(level);
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(g);
  const double w = volume() / static_cast<double>(total);
  std::vector<QuadratureNode> nodes;
  nodes.reserve(total);
  // Node index = j_0 + g (j_1 + g (j_2 + ...)).
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vec p(n);
    std::size_t rest = idx;
    for (int d = 0; d < n; ++d) {
      p(d) = periods_[d] * static_cast<double>(rest % g) / g;
      rest /= g;
    }
    nodes.push_back({p, w});
  }
  return nodes;
}

double FlatTorus::volume() const {
  double v = 1.0;
  for (double l : periods_) v *= l;
  return v;
}

Vec FlatTorus::random_point(std::mt19937_64& rng) const {
  Vec p(dim());
  for (int d = 0; d < dim(); ++d) {
    std::uniform_real_distribution<double> u(0.0, periods_[d]);
    p(d) = u(rng);
  }
  return p;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const RoundSphere> make_sphere(int n, double radius) {
  return std::make_shared<RoundSphere>(n, radius);
}

std::shared_ptr<const FlatTorus> make_torus(int n, double period) {
  return std::make_shared<FlatTorus>(std::vector<double>(static_cast<std::size_t>(n), period));
}

void gauss_legendre(int m, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  // Golub-Welsch on the Legendre Jacobi matrix.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = beta;
    jac(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes.resize(static_cast<std::size_t>(m));
  weights.resize(static_cast<std::size_t>(m));
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < m; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    nodes[static_cast<std::size_t>(i)] = mid + half * es.eigenvalues()(i);
    weights[static_cast<std::size_t>(i)] = 2.0 * v0 * v0 * half;
  }
}

}  // namespace hvf
