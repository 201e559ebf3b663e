#pragma once

#include <cmath>
#include <random>
#include <string>

#include <hvf/field.hpp>
#include <hvf/manifold.hpp>
#include <hvf/polynomial.hpp>

namespace fixture {

using hvf::FieldPtr;
using hvf::ManifoldPtr;
using hvf::Vec;

/// A smooth tangent field with polynomial (sphere) or trigonometric (torus)
/// coefficients against the global frame.
inline FieldPtr coefficient_field(const ManifoldPtr& m, const std::string& a, const std::string& b,
                                  const std::string& c) {
  const Vec p0 = Vec::Zero(m->ambient_dim());
  std::vector<hvf::ScalarFunctionPtr> coeffs;
  for (const auto& s : {a, b, c}) {
    if (m->kind() == hvf::Manifold::Kind::FlatTorus)
      coeffs.push_back(hvf::PolynomialFunction::torus_trig(
          s, static_cast<const hvf::FlatTorus&>(*m).periods()));
    else
      coeffs.push_back(hvf::PolynomialFunction::ambient(s, m->ambient_dim()));
  }
  return std::make_shared<hvf::CoefficientField>(m->frame_fields(p0), std::move(coeffs));
}

/// Seeded random coefficient field of low degree.
inline FieldPtr random_field(const ManifoldPtr& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const bool torus = m->kind() == hvf::Manifold::Kind::FlatTorus;
  auto term = [&](int k) {
    const std::string v = torus ? (k % 2 ? "s" : "c") + std::to_string(k % 3 + 1)
                                : "x" + std::to_string(k % 4 + 1);
    return std::to_string(u(rng)) + "*" + v;
  };
  std::string s[3];
  for (int c = 0; c < 3; ++c)
    s[c] = std::to_string(u(rng)) + " + " + term(c) + " + " + term(c + 1) + "*" + term(c + 2);
  return coefficient_field(m, s[0], s[1], s[2]);
}

/// normalize(c0 + 0.2 * random_field) with |c0| = 1: the perturbation stays
/// below 1 in size, so the field never vanishes before normalization.
inline FieldPtr random_unit_field(const ManifoldPtr& m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> c(3);
  double s = 0.0;
  for (double& v : c) {
    v = g(rng);
    s += v * v;
  }
  for (double& v : c) v /= std::sqrt(s);
  const Vec p0 = Vec::Zero(m->ambient_dim());
  auto base = std::make_shared<hvf::LinearCombinationField>(m->frame_fields(p0), c);
  return std::make_shared<hvf::NormalizedField>(
      std::make_shared<hvf::AffineSumField>(base, 1.0, random_field(m, rng), 0.2));
}

}  // namespace fixture
