#include "hvf/flow.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hvf/error.hpp"
#include "hvf/parallel.hpp"

namespace hvf {

namespace {

double max_norm(const std::vector<Vec>& vs) {
  double r = 0.0;
  for (const Vec& v : vs) r = std::max(r, v.norm());
  return r;
}

// Applies the 1-D matrix d along axis `axis` of an N^n grid stored
// j0 + N (j1 + N j2 ...).
std::vector<double> apply_axis(const Eigen::MatrixXd& d, const std::vector<double>& f, int grid,
                               int axis) {
  std::size_t stride = 1;
  for (int a = 0; a < axis; ++a) stride *= static_cast<std::size_t>(grid);
  const auto N = static_cast<std::size_t>(grid);
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const std::size_t j = (idx / stride) % N;
    const std::size_t base = idx - j * stride;
    double s = 0.0;
    for (std::size_t k = 0; k < N; ++k) s += d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * f[base + k * stride];
    out[idx] = s;
  }
  return out;
}

void require_sigma_zero(const WeightTriple& w, const char* what) {
  if (!w.sigma_vanishes()) throw UnsupportedError(std::string(what) + ": requires sigma = 0");
}

}  // namespace

NodalState evaluate_nodes_generic(const WeightTriple& w, const DiscreteUnitField& x) {
  require_sigma_zero(w, "evaluate_nodes");
  const ManifoldPtr& m = x.manifold();
  const auto& nodes = x.nodes();
  const FieldPtr& f = x.field();
  struct Out {
    double e;
    double g;
    Vec t;
  };
  const auto outs = parallel_map(nodes.size(), [&](std::size_t k) {
    const Vec& p = nodes[k].point;
    const double g = grad_norm_sq(*m, *f, p);
    const WeightValues v = w.checked_values({p, f->value(p)});
    return Out{nodes[k].weight * (m->dim() * v.alpha + v.delta * g), g,
               restricted_tension_vertical(w, f, p)};
  });
  NodalState s;
  std::vector<double> e;
  for (const Out& o : outs) {
    e.push_back(o.e);
    s.grad_norm_sq.push_back(o.g);
    s.tension.push_back(o.t);
  }
  s.energy = 0.5 * ordered_sum(e);
  s.residual = max_norm(s.tension);
  return s;
}

NodalState evaluate_nodes_spectral(const WeightTriple& w, const DiscreteUnitField& x) {
  require_sigma_zero(w, "evaluate_nodes");
  const ManifoldPtr& m = x.manifold();
  if (m->kind() != Manifold::Kind::FlatTorus)
    throw UnsupportedError("spectral node evaluation needs a flat torus");
  const auto& torus = static_cast<const FlatTorus&>(*m);
  const int n = m->dim();
  const int grid = FlatTorus::grid_size(x.level());
  const auto& nodes = x.nodes();
  const auto& coeffs = x.coefficients();
  const std::size_t total = nodes.size();

  // Coefficient a = interpolant of unit vectors; on the flat frame X = a / |a|.
  // da[c][d] = d_d a^c, dda[c][d] = d_d d_d a^c at the nodes.
  std::vector<std::vector<std::vector<double>>> da(n), dda(n);
  for (int c = 0; c < n; ++c) {
    std::vector<double> f(total);
    for (std::size_t k = 0; k < total; ++k) f[k] = coeffs[k](c);
    for (int d = 0; d < n; ++d) {
      const double period = torus.periods()[static_cast<std::size_t>(d)];
      da[c].push_back(apply_axis(periodic_derivative_matrix(grid, period, 1), f, grid, d));
      dda[c].push_back(apply_axis(periodic_derivative_matrix(grid, period, 2), f, grid, d));
    }
  }

  struct Out {
    double e;
    double g;
    Vec t;
  };
  const auto outs = parallel_map(total, [&](std::size_t k) {
    const Vec& p = nodes[k].point;
    const Vec a = coeffs[k];  // unit
    // Normalized jet at |a| = 1:
    //   dX = da - a (a.da),  ddX = dda - 2 s da - a (|da|^2 + a.dda) + 3 s^2 a.
    Vec lap = Vec::Zero(n);
    std::vector<Vec> nx;
    double gsq = 0.0;
    for (int d = 0; d < n; ++d) {
      Vec g1(n), g2(n);
      for (int c = 0; c < n; ++c) {
        g1(c) = da[c][d][k];
        g2(c) = dda[c][d][k];
      }
      const double s = a.dot(g1);
      const Vec dx = g1 - s * a;
      lap += g2 - 2.0 * s * g1 - (g1.squaredNorm() + a.dot(g2)) * a + 3.0 * s * s * a;
      gsq += dx.squaredNorm();
      nx.push_back(dx);
    }
    const WeightJet j = w.jet({p, a});
    w.check(j.value);
    const double de = j.value.delta;
    Vec kt = lap;
    for (int d = 0; d < n; ++d) kt += (j.delta.h(d) + j.delta.v.dot(nx[static_cast<std::size_t>(d)])) / de * nx[static_cast<std::size_t>(d)];
    kt -= (0.5 * n / de) * j.alpha.v;
    kt -= (0.5 * gsq / de) * j.delta.v;
    kt -= kt.dot(a) * a;
    return Out{nodes[k].weight * (n * j.value.alpha + de * gsq), gsq, kt};
  });
  NodalState s;
  std::vector<double> e;
  for (const Out& o : outs) {
    e.push_back(o.e);
    s.grad_norm_sq.push_back(o.g);
    s.tension.push_back(o.t);
  }
  s.energy = 0.5 * ordered_sum(e);
  s.residual = max_norm(s.tension);
  return s;
}

NodalState evaluate_nodes(const WeightTriple& w, const DiscreteUnitField& x) {
  if (x.manifold()->kind() == Manifold::Kind::FlatTorus) return evaluate_nodes_spectral(w, x);
  return evaluate_nodes_generic(w, x);
}

FlowResult gradient_flow(const WeightTriple& w, const DiscreteUnitField& x0,
                         const FlowOptions& opts) {
  require_sigma_zero(w, "gradient_flow");
  if (opts.steps < 0 || !(opts.step0 > 0.0) || !(opts.max_step >= opts.step0) ||
      opts.grow_after < 1)
    throw PreconditionError("gradient_flow: invalid options");
  if (w.manifold() != x0.manifold())
    throw PreconditionError("gradient_flow: weights and field live on different manifolds");

  const ManifoldPtr& m = x0.manifold();
  FlowTrace trace;
  DiscreteUnitField x = x0;
  NodalState state = evaluate_nodes(w, x);
  trace.records.push_back({0, state.energy, state.residual, 0.0});

  double eta = opts.step0;
  int streak = 0;
  int step = 0;
  while (true) {
    if (state.residual < opts.tolerance) {
      trace.converged = true;
      break;
    }
    if (step >= opts.steps) break;
    ++step;
    bool accepted = false;
    while (eta >= opts.min_step) {
      std::vector<Vec> next;
      next.reserve(x.coefficients().size());
      for (std::size_t k = 0; k < x.coefficients().size(); ++k) {
        const auto frame = m->frame(x.nodes()[k].point).vectors;
        Vec a = x.coefficients()[k];
        for (int c = 0; c < m->dim(); ++c)
          a(c) += eta * frame[static_cast<std::size_t>(c)].dot(state.tension[k]);
        next.push_back(a);
      }
      DiscreteUnitField candidate(m, x.level(), std::move(next));
      NodalState cs = evaluate_nodes(w, candidate);
      // Near a minimum the energy decrease falls below rounding; a tie is
      // accepted only if the residual improves, so energy never increases.
      if (cs.energy < state.energy ||
          (cs.energy == state.energy && cs.residual < state.residual)) {
        x = std::move(candidate);
        state = std::move(cs);
        accepted = true;
        break;
      }
      eta *= 0.5;
      streak = 0;
    }
    if (!accepted) {
      trace.stalled = true;
      break;
    }
    ++trace.accepted;
    trace.records.push_back({step, state.energy, state.residual, eta});
    if (++streak >= opts.grow_after) {
      eta = std::min(opts.max_step, 2.0 * eta);
      streak = 0;
    }
  }
  return {std::move(x), std::move(trace)};
}

std::string trace_csv(const FlowTrace& trace) {
  std::ostringstream os;
  os << "step,energy,residual,step_size\n";
  char buf[128];
  for (const FlowRecord& r : trace.records) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.step, r.energy, r.residual,
                  r.step_size);
    os << buf;
  }
  return os.str();
}

}  // namespace hvf
