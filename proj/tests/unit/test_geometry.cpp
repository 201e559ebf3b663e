#include <gtest/gtest.h>

#include <hvf/error.hpp>
#include <hvf/field_calculus.hpp>
#include <hvf/geometry.hpp>
#include <hvf/polynomial.hpp>

#include "oracles.hpp"

using namespace hvf;

namespace {

// Central difference of a scalar along the sphere curve normalize(p + t z).
double sphere_directional(const std::function<double(const Vec&)>& f, const Vec& p, const Vec& z) {
  const double h = 1e-5;
  return (f((p + h * z).normalized()) - f((p - h * z).normalized())) / (2 * h);
}

Vec ambient_directional(const VectorField& y, const Vec& p, const Vec& z) {
  const double h = 1e-6;
  return (y.value(p + h * z) - y.value(p - h * z)) / (2 * h);
}

FieldPtr poly_field(const ManifoldPtr& m, const char* a, const char* b, const char* c) {
  const Vec p0 = Vec::Zero(m->ambient_dim());
  return std::make_shared<CoefficientField>(
      m->frame_fields(p0),
      std::vector<ScalarFunctionPtr>{PolynomialFunction::ambient(a, m->ambient_dim()),
                                     PolynomialFunction::ambient(b, m->ambient_dim()),
                                     PolynomialFunction::ambient(c, m->ambient_dim())});
}

}  // namespace

TEST(CovariantDerivative, HopfFieldAlongItselfIsGeodesic) {
  auto s3 = make_sphere(3);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const Vec p = oracle::random_s3(rng);
    for (int i = 1; i <= 3; ++i)
      EXPECT_LT(covariant_derivative(*s3, *hopf_field(i), p, oracle::hopf(i, p)).norm(), 1e-12);
  }
}

TEST(CovariantDerivative, HopfX1AlongX2MatchesProjectedCurveDerivative) {
  auto s3 = make_sphere(3);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const Vec p = oracle::random_s3(rng);
    const Vec z = oracle::hopf(2, p);
    // finite difference of X1 along the great circle through p with velocity z
    const double h = 1e-6;
    auto curve = [&](double t) { return Vec(std::cos(t) * p + std::sin(t) * z); };
    const Vec fd = oracle::sphere_tangent_part(
        p, (oracle::hopf(1, curve(h)) - oracle::hopf(1, curve(-h))) / (2 * h));
    const Vec got = covariant_derivative(*s3, *hopf_field(1), p, z);
    EXPECT_LT((got - fd).norm(), 1e-6);
    EXPECT_LT((got - oracle::j(1, z)).norm(), 1e-12);
  }
}

TEST(CovariantDerivative, ParallelFieldOnTorusHasZeroDerivative) {
  auto t3 = make_torus(3);
  Vec c(3);
  c << 0.3, -0.4, 0.5;
  const ConstantField x(c);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const Vec p = t3->random_point(rng);
    EXPECT_LT(covariant_derivative(*t3, x, p, oracle::random_vec(3, rng)).norm(), 1e-12);
  }
}

TEST(CovariantDerivative, RejectsNonTangentDirection) {
  auto s3 = make_sphere(3);
  Vec p(4);
  p << 1, 0, 0, 0;
  EXPECT_THROW(covariant_derivative(*s3, *hopf_field(1), p, p), PreconditionError);
}

TEST(Riemann, UnitSphereHasConstantCurvatureOne) {
  auto s3 = make_sphere(3);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    const Vec p = oracle::random_s3(rng);
    const Vec x = oracle::random_s3_tangent(p, rng);
    const Vec y = oracle::random_s3_tangent(p, rng);
    const Vec z = oracle::random_s3_tangent(p, rng);
    EXPECT_LT((riemann(s3, p, x, y, z) - oracle::sphere_curvature(x, y, z)).norm(), 1e-5);
  }
}

TEST(Riemann, HopfPairExample) {
  auto s3 = make_sphere(3);
  std::mt19937_64 rng(5);
  const Vec p = oracle::random_s3(rng);
  const Vec r = riemann(s3, p, oracle::hopf(2, p), oracle::hopf(3, p), oracle::hopf(3, p));
  EXPECT_LT((r - oracle::hopf(2, p)).norm(), 1e-5);
}

TEST(Riemann, FlatTorusVanishes) {
  auto t3 = make_torus(3);
  std::mt19937_64 rng(6);
  const Vec p = t3->random_point(rng);
  const Vec r = riemann(t3, p, oracle::random_vec(3, rng), oracle::random_vec(3, rng),
                        oracle::random_vec(3, rng));
  EXPECT_LT(r.norm(), 1e-10);
}

TEST(Riemann, FirstBianchiIdentity) {
  auto s3 = make_sphere(3);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 10; ++k) {
    const Vec p = oracle::random_s3(rng);
    const Vec x = oracle::random_s3_tangent(p, rng);
    const Vec y = oracle::random_s3_tangent(p, rng);
    const Vec z = oracle::random_s3_tangent(p, rng);
    const Vec s = riemann(s3, p, x, y, z) + riemann(s3, p, y, z, x) + riemann(s3, p, z, x, y);
    EXPECT_LT(s.norm(), 1e-5);
  }
}

TEST(Riemann, RicciActionOnS3IsTwice) {
  auto s3 = make_sphere(3);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    const Vec p = oracle::random_s3(rng);
    EXPECT_LT((ricci_action(s3, oracle::hopf(1, p), p) - 2 * oracle::hopf(1, p)).norm(), 1e-5);
    const Vec x = oracle::random_s3_tangent(p, rng);
    EXPECT_LT((ricci_action(s3, x, p) - 2 * x).norm(), 1e-5);
  }
}

TEST(Connection, MetricCompatibility) {
  auto s3 = make_sphere(3);
  auto x = poly_field(s3, "x1*x2 + 1", "x3 - x4^2", "2*x1");
  auto y = poly_field(s3, "x4", "x1*x3 - 1/2", "x2^2 + x1");
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const Vec p = oracle::random_s3(rng);
    const Vec z = oracle::random_s3_tangent(p, rng);
    const double lhs = sphere_directional(
        [&](const Vec& q) { return x->value(q).dot(y->value(q)); }, p, z);
    const double rhs = covariant_derivative(*s3, *x, p, z).dot(y->value(p)) +
                       x->value(p).dot(covariant_derivative(*s3, *y, p, z));
    EXPECT_LT(std::abs(lhs - rhs), 1e-5);
  }
}

TEST(Connection, TorsionFree) {
  auto s3 = make_sphere(3);
  auto x = poly_field(s3, "x1*x2 + 1", "x3 - x4^2", "2*x1");
  auto y = poly_field(s3, "x4", "x1*x3 - 1/2", "x2^2 + x1");
  std::mt19937_64 rng(10);
  for (int k = 0; k < 20; ++k) {
    const Vec p = oracle::random_s3(rng);
    const Vec xp = x->value(p), yp = y->value(p);
    const Vec bracket = ambient_directional(*y, p, xp) - ambient_directional(*x, p, yp);
    const Vec t = covariant_derivative(*s3, *y, p, xp) - covariant_derivative(*s3, *x, p, yp);
    EXPECT_LT((t - bracket).norm(), 1e-5);
  }
}

TEST(Frame, HopfFrameIsOrthonormal) {
  auto s3 = make_sphere(3);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Vec p = oracle::random_s3(rng);
    const auto f = frame_field(*s3, p);
    ASSERT_EQ(f.vectors.size(), 3u);
    for (int a = 0; a < 3; ++a) {
      EXPECT_LT((f.vectors[a] - oracle::hopf(a + 1, p)).norm(), 1e-14);
      for (int b = 0; b < 3; ++b) EXPECT_NEAR(f.vectors[a].dot(f.vectors[b]), a == b, 1e-12);
    }
  }
}

TEST(Frame, TorusFrameIsStandardBasis) {
  auto t3 = make_torus(3);
  Vec p(3);
  p << 0.1, 0.7, 0.2;
  const auto f = frame_field(*t3, p);
  for (int a = 0; a < 3; ++a) EXPECT_EQ(f.vectors[a], unit_vector(3, a));
}

TEST(Integrate, SphereVolume) {
  auto s3 = make_sphere(3);
  EXPECT_NEAR(integrate(*s3, [](const Vec&) { return 1.0; }, 4), 2 * oracle::pi * oracle::pi, 1e-8);
  EXPECT_NEAR(s3->volume(), 2 * oracle::pi * oracle::pi, 1e-12);
  // the X1 frame component of X1 is identically 1
  EXPECT_NEAR(integrate(*s3, [](const Vec& p) { return oracle::hopf(1, p).dot(oracle::hopf(1, p)); }, 4),
              2 * oracle::pi * oracle::pi, 1e-8);
}

TEST(Integrate, SphereLowDegreeMoments) {
  auto s3 = make_sphere(3);
  // mean of x1^2 over S^3 is 1/4, of x1^2 x2^2 is 1/24
  const double vol = 2 * oracle::pi * oracle::pi;
  EXPECT_NEAR(integrate(*s3, [](const Vec& p) { return p(0) * p(0); }, 4), vol / 4, 1e-10);
  EXPECT_NEAR(integrate(*s3, [](const Vec& p) { return p(0) * p(0) * p(1) * p(1); }, 4), vol / 24,
              1e-10);
}

TEST(Integrate, TorusVolumeAndWeights) {
  auto t3 = make_torus(3);
  EXPECT_DOUBLE_EQ(integrate(*t3, [](const Vec&) { return 1.0; }, 2), 1.0);
  for (const auto& n : t3->quadrature(3)) EXPECT_GT(n.weight, 0.0);
}

TEST(Integrate, InvalidLevelThrows) {
  auto s3 = make_sphere(3);
  EXPECT_THROW(integrate(*s3, [](const Vec&) { return 1.0; }, 0), PreconditionError);
}
