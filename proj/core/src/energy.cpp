#include "hvf/energy.hpp"

#include <cmath>
#include <sstream>

#include "hvf/error.hpp"
#include "hvf/parallel.hpp"

namespace hvf {

double energy_density(const WeightTriple& w, const VectorField& x, const Vec& p) {
  const Manifold& m = *w.manifold();
  require_unit(x, p, "energy");
  const WeightValues v = w.checked_values({p, x.value(p)});
  if (v.sigma != 0.0) throw UnsupportedError("energy: requires sigma = 0");
  return m.dim() * v.alpha + v.delta * grad_norm_sq(m, x, p);
}

double energy(const WeightTriple& w, const VectorField& x, int level) {
  const auto nodes = w.manifold()->quadrature(level);
  const auto terms = parallel_map(nodes.size(), [&](std::size_t k) {
    return nodes[k].weight * energy_density(w, x, nodes[k].point);
  });
  return 0.5 * ordered_sum(terms);
}

double hilbert_schmidt_check(const WeightTriple& w, const VectorField& x, const Vec& p) {
  const Manifold& m = *w.manifold();
  const WeightValues v = w.checked_values({p, x.value(p)});
  double trace = 0.0;
  for (const Vec& e : m.frame(p).vectors) {
    const SplitTangent xe{e, covariant_derivative(m, x, p, e)};
    trace += bundle_metric_eval(v, xe, xe);
  }
  return trace - (m.dim() * v.alpha + v.delta * grad_norm_sq(m, x, p));
}

FirstVariation first_variation(const WeightTriple& w, const FieldPtr& x, const FieldPtr& v,
                               int level, PairingRoute route, ConnectionRoute connection) {
  const auto nodes = w.manifold()->quadrature(level);
  for (const auto& node : nodes) {
    const Vec vp = v->value(node.point);
    const double g = vp.dot(x->value(node.point));
    if (std::abs(g) > 1e-8 * std::max(1.0, vp.norm())) {
      std::ostringstream os;
      os << "first_variation: variation field is not orthogonal to X (g = " << g << ")";
      throw PreconditionError(os.str());
    }
  }
  const double t = kVariationStep;
  const double ep = energy(w, *unit_variation(x, v, t), level);
  const double em = energy(w, *unit_variation(x, v, -t), level);

  const auto terms = parallel_map(nodes.size(), [&](std::size_t k) {
    const Vec& p = nodes[k].point;
    const Vec kt = route == PairingRoute::Fast
                       ? restricted_tension_vertical(w, x, p)
                       : restricted_tension(w, x, p, connection).v;
    const double delta = w.values({p, x->value(p)}).delta;
    return nodes[k].weight * delta * v->value(p).dot(kt);
  });
  return {(ep - em) / (2.0 * t), -ordered_sum(terms)};
}

}  // namespace hvf
