#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <hvf/discrete_field.hpp>
#include <hvf/weights.hpp>

#include "hvf_cli/config.hpp"

namespace hvf::cli {

/// Whether the scenario field is known to be a harmonic unit field.
enum class Harmonic { Yes, No, Unknown };

struct Scenario {
  std::string name;
  std::string description;
  std::string manifold;  // s3 | t3
  std::string weights;   // sasaki | example58 | custom
  std::string field;     // hopf-x1 | hopf-x2 | hopf-x3 | parallel | wave | random
  std::string alpha;     // custom weights only, polynomial in V1..V3
  std::string sigma = "0";
  int level = 4;  // quadrature for energy and first variation
  int samples = 100;
  int flow_steps = 500;
  double step_size = 0.05;
  std::uint64_t seed = 42;
  double tol = 1e-6;  // analytic-path tolerance
  Harmonic harmonic = Harmonic::Unknown;
  /// Rough Laplacian eigenvalue, Delta X = lambda X, when known in closed form.
  std::optional<double> laplacian_eigenvalue;
  std::optional<double> energy;
  double energy_tol = 1e-6;
  bool energy_absolute = false;
};

/// The shipped scenarios, in listing order.
const std::vector<Scenario>& registry();

/// Throws ConfigError for unknown names.
const Scenario& find_scenario(const std::string& name);

/// Registry entry for config.scenario with the config's overrides applied.
/// Changing weights or field drops the reference values that no longer apply.
Scenario configure(const Config& config);

/// A scenario turned into geometric objects.
struct Instance {
  ManifoldPtr manifold;
  WeightPtr weights;
  FieldPtr field;
  /// Set when the field is stored at quadrature nodes (random fields).
  std::optional<DiscreteUnitField> discrete;
};

Instance instantiate(const Scenario& s);

/// Initial condition for the flow: the scenario field sampled at the nodes,
/// or the seeded random field itself.
DiscreteUnitField flow_start(const Scenario& s, const Instance& inst);

/// Seeded tangent field with low-degree polynomial (sphere) or trigonometric
/// (torus) coefficients against the global frame.
FieldPtr random_coefficient_field(const ManifoldPtr& m, std::mt19937_64& rng);

/// Unit field (cos t, sin t, 0) with t = sin(2 pi x^1) on the unit torus;
/// unit but not harmonic.
FieldPtr wave_field();

}  // namespace hvf::cli
