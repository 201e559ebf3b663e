#include <gtest/gtest.h>

#include <cstdlib>

#include <hvf/error.hpp>
#include <hvf/flow.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hvf;

namespace {

std::vector<double> sample(const std::function<double(const Vec&)>& f, const FlatTorus& t, int level) {
  std::vector<double> v;
  for (const auto& n : t.quadrature(level)) v.push_back(f(n.point));
  return v;
}

}  // namespace

TEST(TrigInterpolant, ReproducesBandLimitedFunction) {
  auto t3 = std::make_shared<FlatTorus>(std::vector<double>{1.0, 2.0, 0.5});
  const double w0 = 2 * oracle::pi, w1 = oracle::pi, w2 = 4 * oracle::pi;
  const auto f = [&](const Vec& q) {
    return 0.3 + std::cos(w0 * q(0)) * std::sin(w1 * q(1)) + 0.5 * std::sin(2 * w2 * q(2));
  };
  const TrigInterpolant it(t3->periods(), FlatTorus::grid_size(2), sample(f, *t3, 2));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) {
    const Vec q = t3->random_point(rng);
    EXPECT_NEAR(it.value(q), f(q), 1e-12);
    Vec g(3);
    g << -w0 * std::sin(w0 * q(0)) * std::sin(w1 * q(1)),
        w1 * std::cos(w0 * q(0)) * std::cos(w1 * q(1)), w2 * std::cos(2 * w2 * q(2));
    EXPECT_LT((it.gradient(q) - g).norm(), 1e-10);
    EXPECT_NEAR(it.hessian(q, unit_vector(3, 0), unit_vector(3, 1)),
                -w0 * w1 * std::sin(w0 * q(0)) * std::cos(w1 * q(1)), 1e-9);
    EXPECT_NEAR(it.hessian(q, unit_vector(3, 2), unit_vector(3, 2)),
                -4 * w2 * w2 * 0.5 * std::sin(2 * w2 * q(2)), 1e-8);
  }
}

TEST(TrigInterpolant, DerivativeMatrices) {
  const int n = 7;
  const double period = 2.0, w = oracle::pi;
  Eigen::VectorXd f(n), df(n), ddf(n);
  for (int j = 0; j < n; ++j) {
    const double x = period * j / n;
    f(j) = std::sin(3 * w * x);
    df(j) = 3 * w * std::cos(3 * w * x);
    ddf(j) = -9 * w * w * std::sin(3 * w * x);
  }
  EXPECT_LT((periodic_derivative_matrix(n, period, 1) * f - df).norm(), 1e-11);
  EXPECT_LT((periodic_derivative_matrix(n, period, 2) * f - ddf).norm(), 1e-9);
  EXPECT_LT((periodic_derivative_matrix(n, period, 0) - Eigen::MatrixXd::Identity(n, n)).norm(), 1e-12);
}

TEST(TrigInterpolant, RejectsEvenGrid) {
  EXPECT_THROW(TrigInterpolant({1.0}, 4, std::vector<double>(4, 0.0)), PreconditionError);
}

TEST(DiscreteField, UnitAtNodesAndSmoothBetween) {
  auto t3 = make_torus(3);
  const DiscreteUnitField x = DiscreteUnitField::random(t3, 2, 7);
  EXPECT_LT(x.max_unit_defect(), 1e-10);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 10; ++k) {
    const Vec q = t3->random_point(rng);
    EXPECT_NEAR(x.field()->value(q).norm(), 1.0, 1e-12);
  }
  for (std::size_t k = 0; k < x.nodes().size(); k += 17)
    EXPECT_LT((x.field()->value(x.nodes()[k].point) - x.node_value(k)).norm(), 1e-12);
}

TEST(DiscreteField, SampledHopfFieldIsExact) {
  auto s3 = make_sphere(3);
  const DiscreteUnitField x = DiscreteUnitField::sample(s3, *hopf_field(1), 3);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const Vec p = oracle::random_s3(rng);
    EXPECT_LT((x.field()->value(p) - oracle::hopf(1, p)).norm(), 1e-10);
  }
}

TEST(DiscreteField, RandomSphereFieldIsSmooth) {
  auto s3 = make_sphere(3);
  const DiscreteUnitField x = DiscreteUnitField::random(s3, 3, 5);
  EXPECT_LT(x.max_unit_defect(), 1e-10);
  std::mt19937_64 rng(4);
  const Vec p = oracle::random_s3(rng);
  EXPECT_NEAR(x.field()->value(p).norm(), 1.0, 1e-12);
  EXPECT_LT(s3->tangency_residual(p, x.field()->value(p)), 1e-12);
}

TEST(DiscreteField, RejectsBadInput) {
  auto t3 = make_torus(3);
  EXPECT_THROW(DiscreteUnitField(t3, 1, std::vector<Vec>(5, unit_vector(3, 0))), PreconditionError);
  EXPECT_THROW(DiscreteUnitField::random(t3, 1, 1, 1.5), PreconditionError);
  EXPECT_THROW(DiscreteUnitField::random(make_sphere(2), 1, 1), UnsupportedError);
}

TEST(NodeEvaluation, SpectralMatchesGeneric) {
  auto t3 = make_torus(3);
  for (const auto& w : {make_sasaki(t3), make_example58(t3), make_random_polynomial_weights(t3, 2)}) {
    const DiscreteUnitField x = DiscreteUnitField::random(t3, 2, 11);
    const NodalState a = evaluate_nodes_spectral(*w, x);
    const NodalState b = evaluate_nodes_generic(*w, x);
    EXPECT_LT(oracle::rel(a.energy, b.energy), 1e-10);
    double d = 0.0;
    for (std::size_t k = 0; k < a.tension.size(); ++k)
      d = std::max(d, (a.tension[k] - b.tension[k]).norm());
    EXPECT_LT(d, 1e-10 * std::max(1.0, b.residual)) << w->name();
    EXPECT_NEAR(a.residual, b.residual, 1e-10 * std::max(1.0, b.residual));
  }
}

TEST(NodeEvaluation, EnergyMatchesEnergyFunctional) {
  auto t3 = make_torus(3);
  auto w = make_example58(t3);
  const DiscreteUnitField x = DiscreteUnitField::random(t3, 2, 3);
  EXPECT_LT(oracle::rel(evaluate_nodes(*w, x).energy, energy(*w, *x.field(), 2)), 1e-12);
}

TEST(Flow, HarmonicStartExitsImmediately) {
  auto s3 = make_sphere(3);
  auto w = make_example58(s3);
  const DiscreteUnitField x0 = DiscreteUnitField::sample(s3, *hopf_field(1), 3);
  const FlowResult r = gradient_flow(*w, x0);
  EXPECT_TRUE(r.trace.converged);
  EXPECT_EQ(r.trace.accepted, 0);
  ASSERT_EQ(r.trace.records.size(), 1u);
  EXPECT_NEAR(r.trace.records[0].energy, 35 * oracle::pi * oracle::pi / 6, 1e-6);
}

TEST(Flow, RandomTorusFieldReachesParallelField) {
  auto t3 = make_torus(3);
  auto w = make_sasaki(t3);
  const DiscreteUnitField x0 = DiscreteUnitField::random(t3, 3, 42);
  const FlowResult r = gradient_flow(*w, x0);
  ASSERT_GE(r.trace.records.size(), 2u);
  for (std::size_t k = 1; k < r.trace.records.size(); ++k) {
    EXPECT_LE(r.trace.records[k].energy, r.trace.records[k - 1].energy);
    EXPECT_EQ(r.trace.records[k].step, static_cast<int>(k));
  }
  EXPECT_TRUE(r.trace.converged);
  EXPECT_FALSE(r.trace.stalled);
  EXPECT_LE(r.trace.records.back().step, 500);
  const NodalState s = evaluate_nodes(*w, r.field);
  double g = 0.0;
  for (double v : s.grad_norm_sq) g = std::max(g, v);
  EXPECT_LT(g, 1e-3);
  EXPECT_NEAR(s.energy, 1.5, 1e-3);
  // the fixed point satisfies the harmonicity balance at the nodes
  double res = 0.0;
  for (std::size_t k = 0; k < r.field.nodes().size(); k += 7)
    res = std::max(res, harmonicity_residual(*w, r.field.field(), r.field.nodes()[k].point).residual_norm);
  EXPECT_LT(res, 1e-4);
}

TEST(Flow, TraceIsDeterministicAcrossThreadCounts) {
  auto t3 = make_torus(3);
  auto w = make_example58(t3);
  FlowOptions o;
  o.steps = 40;
  const DiscreteUnitField x0 = DiscreteUnitField::random(t3, 2, 9);
  const std::string a = trace_csv(gradient_flow(*w, x0, o).trace);
  const std::string b = trace_csv(gradient_flow(*w, x0, o).trace);
  ::setenv("HVF_THREADS", "1", 1);
  const std::string c = trace_csv(gradient_flow(*w, x0, o).trace);
  ::setenv("HVF_THREADS", "3", 1);
  const std::string d = trace_csv(gradient_flow(*w, x0, o).trace);
  ::unsetenv("HVF_THREADS");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a, d);
  EXPECT_EQ(a.rfind("step,energy,residual,step_size\n", 0), 0u);
}

TEST(Flow, StepBudgetAndOptions) {
  auto t3 = make_torus(3);
  auto w = make_sasaki(t3);
  const DiscreteUnitField x0 = DiscreteUnitField::random(t3, 2, 1);
  FlowOptions o;
  o.steps = 3;
  const FlowResult r = gradient_flow(*w, x0, o);
  EXPECT_FALSE(r.trace.converged);
  EXPECT_EQ(r.trace.records.back().step, 3);
  o.step0 = -1.0;
  EXPECT_THROW(gradient_flow(*w, x0, o), PreconditionError);
  EXPECT_THROW(gradient_flow(*make_random_sigma_weights(t3, 1), x0), UnsupportedError);
}

TEST(Flow, SphereFieldDescends) {
  auto s3 = make_sphere(3);
  auto w = make_sasaki(s3);
  FlowOptions o;
  o.steps = 5;
  const FlowResult r = gradient_flow(*w, DiscreteUnitField::random(s3, 2, 3), o);
  ASSERT_GE(r.trace.records.size(), 2u);
  EXPECT_LT(r.trace.records.back().energy, r.trace.records.front().energy);
}
