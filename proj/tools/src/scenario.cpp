#include "hvf_cli/scenario.hpp"

#include <cmath>
#include <numbers>

#include <hvf/manifold.hpp>
#include <hvf/polynomial.hpp>

namespace hvf::cli {

namespace {

constexpr double kPi = std::numbers::pi;

Scenario hopf(std::string name, std::string weights, std::string field, double energy,
              std::string description) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.manifold = "s3";
  s.weights = std::move(weights);
  s.field = std::move(field);
  s.harmonic = Harmonic::Yes;
  s.laplacian_eigenvalue = 2.0;
  s.energy = energy;
  return s;
}

std::vector<Scenario> build_registry() {
  std::vector<Scenario> r;
  // alpha = 3/2, delta = 2/3 along X_1; |nabla X_1|^2 = 2 and vol = 2 pi^2
  r.push_back(hopf("hopf-s3-example58", "example58", "hopf-x1", 35 * kPi * kPi / 6,
                   "Hopf field X1 on S3 with alpha = (V1)^2/2 + 1"));
  r.push_back(hopf("hopf-s3-sasaki", "sasaki", "hopf-x1", 5 * kPi * kPi,
                   "Hopf field X1 on S3 with the Sasaki metric"));
  // V1 vanishes along X_2, so the weights reduce to the Sasaki values there
  r.push_back(hopf("hopf-s3-x2-example58", "example58", "hopf-x2", 5 * kPi * kPi,
                   "Hopf field X2 on S3 with alpha = (V1)^2/2 + 1"));

  Scenario par;
  par.name = "torus-parallel-sasaki";
  par.description = "Parallel unit field on the unit flat 3-torus, Sasaki metric";
  par.manifold = "t3";
  par.weights = "sasaki";
  par.field = "parallel";
  par.harmonic = Harmonic::Yes;
  par.laplacian_eigenvalue = 0.0;
  par.energy = 1.5;
  par.energy_tol = 1e-9;
  par.energy_absolute = true;
  par.level = 3;
  r.push_back(par);

  Scenario wave;
  wave.name = "torus-wave-sasaki";
  wave.description = "Non-harmonic unit field (cos sin 2pi x, sin sin 2pi x, 0) on T3, Sasaki";
  wave.manifold = "t3";
  wave.weights = "sasaki";
  wave.field = "wave";
  wave.harmonic = Harmonic::No;
  // t = sin(2 pi x) is not band-limited; level 5 resolves the variation integrals
  wave.level = 5;
  // |nabla X|^2 = (2 pi cos 2 pi x)^2 averages to 2 pi^2 over the unit torus
  wave.energy = 1.5 + kPi * kPi;
  wave.energy_tol = 1e-9;
  wave.energy_absolute = true;
  r.push_back(wave);

  Scenario rnd;
  rnd.name = "torus-random";
  rnd.description = "Seeded random unit field on T3, Sasaki; the flow start";
  rnd.manifold = "t3";
  rnd.weights = "sasaki";
  rnd.field = "random";
  rnd.level = 3;
  rnd.samples = 60;
  r.push_back(rnd);
  return r;
}

ManifoldPtr make_manifold(const std::string& kind) {
  if (kind == "s3") return make_sphere(3);
  if (kind == "t3") return make_torus(3);
  throw ConfigError("unknown manifold '" + kind + "'");
}

}  // namespace

const std::vector<Scenario>& registry() {
  static const std::vector<Scenario> r = build_registry();
  return r;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : registry())
    if (s.name == name) return s;
  throw ConfigError("unknown scenario '" + name + "' (see list-scenarios)");
}

Scenario configure(const Config& c) {
  if (c.scenario.empty()) throw ConfigError("no scenario given");
  Scenario s = find_scenario(c.scenario);
  if (c.level) s.level = *c.level;
  if (c.samples) s.samples = *c.samples;
  if (c.steps) s.flow_steps = *c.steps;
  if (c.step_size) s.step_size = *c.step_size;
  if (c.seed) s.seed = *c.seed;
  if (c.tol) s.tol = *c.tol;
  if (c.alpha || c.sigma) {
    s.weights = "custom";
    s.alpha = c.alpha.value_or("1");
    s.sigma = c.sigma.value_or("0");
    s.harmonic = Harmonic::Unknown;
    s.energy.reset();
  }
  if (c.field && *c.field != s.field) {
    s.field = *c.field;
    s.harmonic = Harmonic::Unknown;
    s.energy.reset();
    s.laplacian_eigenvalue.reset();
    if (s.manifold == "s3" && s.field.rfind("hopf-x", 0) == 0) s.laplacian_eigenvalue = 2.0;
    if (s.manifold == "t3" && s.field == "parallel") s.laplacian_eigenvalue = 0.0;
  }
  if (s.level < 1 || s.level > 8) throw ConfigError("level must be in [1, 8]");
  if (s.samples < 1) throw ConfigError("samples must be positive");
  if (s.flow_steps < 0) throw ConfigError("steps must be non-negative");
  if (!(s.step_size > 0.0)) throw ConfigError("step_size must be positive");
  if (!(s.tol > 0.0)) throw ConfigError("tol must be positive");
  return s;
}

FieldPtr random_coefficient_field(const ManifoldPtr& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const bool torus = m->kind() == Manifold::Kind::FlatTorus;
  const auto coef = [&] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", u(rng));
    return std::string(buf);
  };
  const auto var = [&](int k) {
    return torus ? std::string(k % 2 ? "s" : "c") + std::to_string(k % 3 + 1)
                 : "x" + std::to_string(k % 4 + 1);
  };
  std::vector<ScalarFunctionPtr> coeffs;
  for (int c = 0; c < m->dim(); ++c) {
    const std::string text = coef() + " + " + coef() + "*" + var(c) + " + " + coef() + "*" +
                             var(c + 1) + "*" + var(c + 2);
    if (torus)
      coeffs.push_back(PolynomialFunction::torus_trig(
          text, static_cast<const FlatTorus&>(*m).periods()));
    else
      coeffs.push_back(PolynomialFunction::ambient(text, m->ambient_dim()));
  }
  return std::make_shared<CoefficientField>(m->frame_fields(Vec::Zero(m->ambient_dim())),
                                            std::move(coeffs));
}

FieldPtr wave_field() {
  const double k = 2 * kPi;
  return std::make_shared<FunctionField>(
      3,
      [k](const Vec& q) {
        const double t = std::sin(k * q(0));
        Vec v(3);
        v << std::cos(t), std::sin(t), 0.0;
        return v;
      },
      [k](const Vec& q, const Vec& d) {
        const double t = std::sin(k * q(0)), dt = k * std::cos(k * q(0));
        Vec v(3);
        v << -std::sin(t), std::cos(t), 0.0;
        return Vec(dt * d(0) * v);
      },
      [k](const Vec& q, const Vec& d1, const Vec& d2) {
        const double t = std::sin(k * q(0)), dt = k * std::cos(k * q(0));
        const double ddt = -k * k * std::sin(k * q(0));
        Vec a(3), b(3);
        a << -std::sin(t), std::cos(t), 0.0;
        b << std::cos(t), std::sin(t), 0.0;
        return Vec(d1(0) * d2(0) * (ddt * a - dt * dt * b));
      });
}

Instance instantiate(const Scenario& s) {
  Instance inst;
  inst.manifold = make_manifold(s.manifold);
  const auto& m = inst.manifold;
  if (s.weights == "sasaki")
    inst.weights = make_sasaki(m);
  else if (s.weights == "example58")
    inst.weights = make_example58(m);
  else if (s.weights == "custom")
    inst.weights = make_polynomial_weights(m, s.alpha, s.sigma, "custom");
  else
    throw ConfigError("unknown weights '" + s.weights + "'");

  const bool sphere = m->kind() == Manifold::Kind::RoundSphere;
  if (s.field.rfind("hopf-x", 0) == 0 && s.field.size() == 7 && sphere) {
    const int i = s.field[6] - '0';
    if (i < 1 || i > 3) throw ConfigError("unknown field '" + s.field + "'");
    inst.field = hopf_field(i);
  } else if (s.field == "parallel" && !sphere) {
    Vec c(3);
    c << 0.48, 0.6, 0.64;
    inst.field = std::make_shared<ConstantField>(c);
  } else if (s.field == "wave" && !sphere) {
    inst.field = wave_field();
  } else if (s.field == "random") {
    inst.discrete = DiscreteUnitField::random(m, s.level, s.seed);
    inst.field = inst.discrete->field();
  } else {
    throw ConfigError("field '" + s.field + "' is not available on " + s.manifold);
  }
  return inst;
}

DiscreteUnitField flow_start(const Scenario& s, const Instance& inst) {
  if (inst.discrete) return *inst.discrete;
  return DiscreteUnitField::sample(inst.manifold, *inst.field, std::min(s.level, 3));
}

}  // namespace hvf::cli
