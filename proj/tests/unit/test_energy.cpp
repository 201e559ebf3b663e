#include <gtest/gtest.h>

#include <hvf/energy.hpp>
#include <hvf/error.hpp>
#include <hvf/geometry.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hvf;

namespace {


FieldPtr random_variation(const ManifoldPtr& m, const FieldPtr& x, std::mt19937_64& rng) {
  return std::make_shared<OrthogonalPartField>(fixture::random_field(m, rng), x);
}

}  // namespace

TEST(Energy, HopfValues) {
  auto s3 = make_sphere(3);
  const double pi2 = oracle::pi * oracle::pi;
  // (1/2)(n alpha + delta |nabla X_1|^2) vol(S^3) with |nabla X_1|^2 = 2, vol = 2 pi^2
  const double sasaki = 0.5 * (3 * 1.0 + 1.0 * 2) * 2 * pi2;
  const double ex58 = 0.5 * (3 * 1.5 + (2.0 / 3.0) * 2) * 2 * pi2;
  EXPECT_NEAR(sasaki, 5 * pi2, 1e-12);
  EXPECT_NEAR(ex58, 35 * pi2 / 6, 1e-12);
  for (int level : {4, 5}) {
    EXPECT_LT(oracle::rel(energy(*make_sasaki(s3), *hopf_field(1), level), sasaki), 1e-6);
    EXPECT_LT(oracle::rel(energy(*make_example58(s3), *hopf_field(1), level), ex58), 1e-6);
  }
}

TEST(Energy, ParallelTorusField) {
  auto t3 = make_torus(3);
  Vec c(3);
  c << 0.48, 0.6, 0.64;
  EXPECT_NEAR(energy(*make_sasaki(t3), ConstantField(c), 3), 1.5, 1e-9);
}

TEST(Energy, BoundedBelowByWeightTerm) {
  auto s3 = make_sphere(3);
  auto w = make_random_polynomial_weights(s3, 3);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 3; ++k) {
    auto x = fixture::random_unit_field(s3, rng);
    const double floor = 0.5 * integrate(*s3, [&](const Vec& p) {
      return 3 * w->values({p, x->value(p)}).alpha;
    }, 3);
    EXPECT_GE(energy(*w, *x, 3), floor);
  }
}

TEST(Energy, RejectsSigmaAndBadLevel) {
  auto s3 = make_sphere(3);
  EXPECT_THROW(energy(*make_random_sigma_weights(s3, 1), *hopf_field(1), 2), UnsupportedError);
  EXPECT_THROW(energy(*make_sasaki(s3), *hopf_field(1), 0), PreconditionError);
}

TEST(HilbertSchmidt, IdentityHolds) {
  std::mt19937_64 rng(2);
  auto s3 = make_sphere(3);
  auto t3 = make_torus(3);
  for (int k = 0; k < 20; ++k) {
    const Vec p = oracle::random_s3(rng);
    EXPECT_LT(std::abs(hilbert_schmidt_check(*make_example58(s3), *hopf_field(1), p)), 1e-9);
    Vec c(3);
    c << 0, 0, 1;
    EXPECT_LT(std::abs(hilbert_schmidt_check(*make_sasaki(t3), ConstantField(c), t3->random_point(rng))),
              1e-9);
    auto x = fixture::random_unit_field(t3, rng);
    EXPECT_LT(std::abs(hilbert_schmidt_check(*make_random_polynomial_weights(t3, 5), *x,
                                             t3->random_point(rng))),
              1e-9);
  }
}

TEST(FirstVariation, VanishesAtHarmonicHopfField) {
  auto s3 = make_sphere(3);
  auto x1 = hopf_field(1);
  for (const auto& w : {make_example58(s3), make_sasaki(s3)}) {
    for (auto route : {PairingRoute::Fast, PairingRoute::Oracle}) {
      const FirstVariation fv = first_variation(*w, x1, hopf_field(2), 3, route);
      EXPECT_LT(std::abs(fv.numeric), 1e-4);
      EXPECT_LT(std::abs(fv.pairing), 1e-4);
    }
  }
}

TEST(FirstVariation, ParallelFieldIsCritical) {
  auto t3 = make_torus(3);
  Vec c(3);
  c << 1, 0, 0;
  auto x = std::make_shared<ConstantField>(c);
  std::mt19937_64 rng(3);
  const FirstVariation fv = first_variation(*make_sasaki(t3), x, random_variation(t3, x, rng), 3);
  EXPECT_LT(std::abs(fv.numeric), 1e-6);
  EXPECT_LT(std::abs(fv.pairing), 1e-9);
}

TEST(FirstVariation, NumericMatchesPairing) {
  std::mt19937_64 rng(4);
  std::vector<ManifoldPtr> ms{make_sphere(3), make_torus(3)};
  for (const auto& m : ms) {
    std::vector<WeightPtr> ws{make_sasaki(m), make_example58(m), make_random_polynomial_weights(m, 6)};
    for (const auto& w : ws)
      for (int k = 0; k < 2; ++k) {
        auto x = fixture::random_unit_field(m, rng);
        auto v = random_variation(m, x, rng);
        const FirstVariation fv = first_variation(*w, x, v, 4);
        EXPECT_LT(std::abs(fv.numeric - fv.pairing), 1e-3 * std::max(1.0, std::abs(fv.pairing)))
            << m->name() << " " << w->name() << " " << fv.numeric << " " << fv.pairing;
      }
  }
}

TEST(FirstVariation, OracleRouteAgreesWithFastRoute) {
  std::mt19937_64 rng(5);
  auto t3 = make_torus(3);
  auto w = make_example58(t3);
  auto x = fixture::random_unit_field(t3, rng);
  auto v = random_variation(t3, x, rng);
  const FirstVariation a = first_variation(*w, x, v, 2, PairingRoute::Fast);
  const FirstVariation b = first_variation(*w, x, v, 2, PairingRoute::Oracle);
  EXPECT_LT(std::abs(a.pairing - b.pairing), 1e-5 * std::max(1.0, std::abs(a.pairing)));
}

TEST(FirstVariation, DescendsAlongTension) {
  // V = K(tau_1) lowers the energy; the pairing is -integral delta |K(tau_1)|^2.
  auto t3 = make_torus(3);
  auto w = make_sasaki(t3);
  auto x = fixture::coefficient_field(t3, "1", "1/2*s1", "0");
  auto ux = std::make_shared<NormalizedField>(x);
  auto v = std::make_shared<FunctionField>(3, [ux, w](const Vec& q) {
    return restricted_tension_vertical(*w, ux, q);
  });
  const FirstVariation fv = first_variation(*w, ux, v, 4);
  EXPECT_LT(fv.numeric, 0.0);
  EXPECT_LT(fv.pairing, 0.0);
  EXPECT_LT(std::abs(fv.numeric - fv.pairing), 1e-3 * std::max(1.0, std::abs(fv.pairing)));
}

TEST(FirstVariation, RejectsNonOrthogonalVariation) {
  auto s3 = make_sphere(3);
  EXPECT_THROW(first_variation(*make_sasaki(s3), hopf_field(1), hopf_field(1), 2),
               PreconditionError);
}

TEST(Variation, IsVertical) {
  // d/dt (X + tV)/|X + tV| at 0 equals V for V orthogonal to unit X
  auto s3 = make_sphere(3);
  std::mt19937_64 rng(6);
  auto x = hopf_field(1);
  auto v = random_variation(s3, x, rng);
  const Vec p = oracle::random_s3(rng);
  const double h = 1e-6;
  const Vec d = (unit_variation(x, v, h)->value(p) - unit_variation(x, v, -h)->value(p)) / (2 * h);
  EXPECT_LT((d - v->value(p)).norm(), 1e-8);
  EXPECT_LT(s3->tangency_residual(p, d), 1e-8);
}
