#include "hvf/harmonicity.hpp"

#include <cmath>

#include "hvf/error.hpp"

namespace hvf {

namespace {

void require_sigma_zero(const WeightValues& v, const char* what) {
  if (v.sigma != 0.0) throw UnsupportedError(std::string(what) + ": requires sigma = 0");
}

double g_norm(const WeightValues& w, const SplitTangent& a) {
  return std::sqrt(std::max(0.0, bundle_metric_eval(w, a, a)));
}

}  // namespace

SplitTangent second_fundamental_form(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                                     const Vec& z, const Vec& wv, ConnectionRoute route) {
  const ManifoldPtr& m = w.manifold();
  m->require_tangent(p, z, "second_fundamental_form");
  m->require_tangent(p, wv, "second_fundamental_form");
  const BundlePoint b{p, x->value(p)};
  const FieldPtr zf = frame_extension(*m, p, z);
  const FieldPtr wf = frame_extension(*m, p, wv);
  const FieldPtr nz = std::make_shared<CovariantDerivativeField>(m, x, zf);
  const FieldPtr nw = std::make_shared<CovariantDerivativeField>(m, x, wf);
  const auto H = LiftField::horizontal;
  const auto V = LiftField::vertical;

  SplitTangent out = levi_civita(route, w, b, H(zf), H(wf));
  out += levi_civita(route, w, b, H(zf), V(nw));
  out += levi_civita(route, w, b, V(nz), H(wf));
  out += levi_civita(route, w, b, V(nz), V(nw));
  // X_*(nabla_Z W) = (nabla_Z W)^h + (nabla_{nabla_Z W} X)^v
  const Vec nzw = covariant_derivative(*m, *wf, p, z);
  out -= SplitTangent{nzw, covariant_derivative(*m, *x, p, nzw)};
  return out;
}

SplitTangent tension_trace(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                           ConnectionRoute route) {
  SplitTangent tau = SplitTangent::zero(static_cast<int>(p.size()));
  for (const Vec& v : w.manifold()->frame(p).vectors)
    tau += second_fundamental_form(w, x, p, v, v, route);
  return tau;
}

SplitTangent tension_closed_form(const WeightTriple& w, const FieldPtr& x, const Vec& p) {
  const ManifoldPtr& m = w.manifold();
  const int n = m->dim();
  const BundlePoint b{p, x->value(p)};
  const WeightJet j = w.jet(b);
  w.check(j.value);
  const double al = j.value.alpha, de = j.value.delta, si = j.value.sigma;
  const FrameFields frame = m->frame_fields(p);
  const Vec xp = b.fiber;
  const int dim = m->ambient_dim();

  Vec hbrace = bundle_gradient(j.value, j.alpha).h;  // pi_*(grad alpha)
  Vec vbrace = Vec::Zero(dim);
  Vec trace_nn = Vec::Zero(dim);
  Vec sum_nvv = Vec::Zero(dim);
  double grad_sq = 0.0, div = 0.0;
  for (const auto& vf : frame) {
    const Vec v = vf->value(p);
    const Vec nx = covariant_derivative(*m, *x, p, v);
    grad_sq += nx.squaredNorm();
    div += nx.dot(v);
    const double ds = j.sigma.h.dot(v) + j.sigma.v.dot(nx);
    const double dd = j.delta.h.dot(v) + j.delta.v.dot(nx);
    hbrace += j.alpha.v.dot(nx) * v;
    hbrace -= ds * nx;
    vbrace -= ds * v;
    vbrace += dd * nx;
    trace_nn += second_covariant_derivative(m, x, p, v, vf);
    sum_nvv += covariant_derivative(*m, *vf, p, v);
  }
  if (si != 0.0) {
    hbrace -= si * ricci_action(m, xp, p);
    hbrace -= si * trace_nn;
    vbrace -= si * sum_nvv;
  }
  hbrace += de * curvature_trace(m, *x, p, frame);
  vbrace += de * trace_hessian(m, x, p, frame);

  SplitTangent tau{hbrace / al, vbrace / de};
  tau -= (0.5 * n) * bundle_gradient(j.value, j.alpha);
  tau += div * bundle_gradient(j.value, j.sigma);
  tau -= (0.5 * grad_sq) * bundle_gradient(j.value, j.delta);
  return tau;
}

TensionResult tension(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                      ConnectionRoute route) {
  TensionResult r{tension_trace(w, x, p, route), tension_closed_form(w, x, p), 0.0};
  r.gap = g_norm(w.values({p, x->value(p)}), r.tau - r.closed);
  return r;
}

SplitTangent restricted_tension(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                                ConnectionRoute route) {
  require_unit(*x, p, "restricted_tension");
  const BundlePoint b{p, x->value(p)};
  const WeightValues v = w.checked_values(b);
  require_sigma_zero(v, "restricted_tension");
  const SplitTangent tau = tension_trace(w, x, p, route);
  const SplitTangent nrm = sphere_normal(w, b);
  return tau - bundle_metric_eval(v, tau, nrm) * nrm;
}

Vec delta_section_term(const WeightTriple& w, const VectorField& x, const Vec& p) {
  const Manifold& m = *w.manifold();
  const WeightJet j = w.jet({p, x.value(p)});
  Vec s = Vec::Zero(m.ambient_dim());
  for (const Vec& v : m.frame(p).vectors) {
    const Vec nx = covariant_derivative(m, x, p, v);
    s += (j.delta.h.dot(v) + j.delta.v.dot(nx)) * nx;
  }
  return s;
}

Vec harmonicity_rhs(const WeightTriple& w, const VectorField& x, const Vec& p) {
  const Manifold& m = *w.manifold();
  const int n = m.dim();
  const Vec xp = x.value(p);
  const WeightJet j = w.jet({p, xp});
  w.check(j.value);
  require_sigma_zero(j.value, "harmonicity_rhs");
  const double de = j.value.delta;
  const double gsq = grad_norm_sq(m, x, p);
  const double da_x = j.alpha.v.dot(xp);  // d alpha(X^v)
  const double dd_x = j.delta.v.dot(xp);
  Vec rhs = ((de - 0.5 * dd_x) * gsq - 0.5 * n * da_x) / de * xp;
  rhs += (0.5 * n) * bundle_gradient(j.value, j.alpha).v;
  rhs += (0.5 * gsq) * bundle_gradient(j.value, j.delta).v;
  rhs -= delta_section_term(w, x, p) / de;
  return rhs;
}

Vec restricted_tension_vertical(const WeightTriple& w, const FieldPtr& x, const Vec& p) {
  const ManifoldPtr& m = w.manifold();
  const int n = m->dim();
  const Vec xp = x->value(p);
  const WeightJet j = w.jet({p, xp});
  w.check(j.value);
  require_sigma_zero(j.value, "restricted_tension_vertical");
  const double de = j.value.delta;
  const FrameFields frame = m->frame_fields(p);
  Vec kt = trace_hessian(m, x, p, frame);
  double gsq = 0.0;
  for (const auto& vf : frame) {
    const Vec v = vf->value(p);
    const Vec nx = covariant_derivative(*m, *x, p, v);
    gsq += nx.squaredNorm();
    kt += (j.delta.h.dot(v) + j.delta.v.dot(nx)) / de * nx;
  }
  kt -= (0.5 * n / de) * j.alpha.v;
  kt -= (0.5 * gsq / de) * j.delta.v;
  return kt - kt.dot(xp) * xp;
}

TensionReport harmonicity_residual(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                                   ConnectionRoute route) {
  const ManifoldPtr& m = w.manifold();
  require_unit(*x, p, "harmonicity_residual");
  const BundlePoint b{p, x->value(p)};
  const WeightValues v = w.checked_values(b);
  require_sigma_zero(v, "harmonicity_residual");
  if (!(v.delta > 1e-12)) throw InvariantError("harmonicity_residual: delta is not positive");

  TensionReport r;
  r.point = p;
  const TensionResult t = tension(w, x, p, route);
  r.tau = t.tau;
  r.closed_form_vs_oracle_gap = t.gap;
  const SplitTangent nrm = sphere_normal(w, b);
  r.normal_component = bundle_metric_eval(v, t.tau, nrm);
  r.tau1 = t.tau - r.normal_component * nrm;
  r.tau1_normal = bundle_metric_eval(v, r.tau1, nrm);
  r.balance_lhs = rough_laplacian(m, x, p);
  r.balance_rhs = harmonicity_rhs(w, *x, p);
  r.residual_norm = (r.balance_lhs - r.balance_rhs).norm();
  r.delta_term = delta_section_term(w, *x, p);
  r.grad_norm_sq = grad_norm_sq(*m, *x, p);
  r.vertical_tension_norm = r.tau1.v.norm();
  return r;
}

}  // namespace hvf
