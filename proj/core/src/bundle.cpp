#include "hvf/bundle.hpp"

#include <cmath>
#include <sstream>

#include "hvf/error.hpp"
#include "hvf/geometry.hpp"

namespace hvf {

const char* lift_kind_name(LiftKind k) { return k == LiftKind::Horizontal ? "h" : "v"; }

SplitTangent LiftField::at(const BundlePoint& b) const {
  const Vec x = field->value(b.base);
  return kind == LiftKind::Horizontal ? SplitTangent::horizontal(x) : SplitTangent::vertical(x);
}

SplitTangent isotropic_apply(const WeightValues& w, const SplitTangent& a) {
  return {w.sigma * a.h - w.delta * a.v, w.alpha * a.h - w.sigma * a.v};
}

SplitTangent isotropic_apply(const WeightTriple& w, const BundlePoint& b, const SplitTangent& a) {
  return isotropic_apply(w.checked_values(b), a);
}

double canonical_one_form(const BundlePoint& b, const SplitTangent& a) {
  return a.h.dot(b.fiber);
}

double bundle_metric_eval(const WeightValues& w, const SplitTangent& a, const SplitTangent& c) {
  return w.alpha * a.h.dot(c.h) - w.sigma * (a.h.dot(c.v) + a.v.dot(c.h)) +
         w.delta * a.v.dot(c.v);
}

double bundle_metric_eval(const WeightTriple& w, const BundlePoint& b, const SplitTangent& a,
                          const SplitTangent& c) {
  return bundle_metric_eval(w.checked_values(b), a, c);
}

BundleMat lift_gram(const WeightValues& w, int n) {
  BundleMat g = BundleMat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    g(k, k) = w.alpha;
    g(n + k, n + k) = w.delta;
    g(k, n + k) = -w.sigma;
    g(n + k, k) = -w.sigma;
  }
  return g;
}

namespace {

struct FrameLift {
  FieldPtr h;  // sum a_k E_k
  FieldPtr v;  // sum b_k E_k
};

FrameLift frame_lift_extension(const Manifold& m, const Vec& p, const SplitTangent& a) {
  return {frame_extension(m, p, a.h), frame_extension(m, p, a.v)};
}

SplitTangent frame_lift_value(const FrameLift& f, const Vec& q) {
  return {f.h->value(q), f.v->value(q)};
}

Vec lie_bracket(const Manifold& m, const Vec& p, const VectorField& x, const VectorField& y) {
  return m.project_tangent(p, y.derivative(p, x.value(p)) - x.derivative(p, y.value(p)));
}

}  // namespace

double theta_differential(const Manifold& m, const BundlePoint& b, const SplitTangent& a,
                          const SplitTangent& c) {
  const FrameLift fa = frame_lift_extension(m, b.base, a);
  const FrameLift fc = frame_lift_extension(m, b.base, c);
  const auto theta = [](const FrameLift& f) {
    return [&f](const BundlePoint& q) { return canonical_one_form(q, frame_lift_value(f, q.base)); };
  };
  const double a_theta_c = tm_derivative(m, theta(fc), b, a);
  const double c_theta_a = tm_derivative(m, theta(fa), b, c);
  // Only [X^h, Y^h] has a horizontal part, namely [X, Y].
  const double theta_bracket = lie_bracket(m, b.base, *fa.h, *fc.h).dot(b.fiber);
  return a_theta_c - c_theta_a - theta_bracket;
}

double metric_from_theta_check(const WeightTriple& w, const BundlePoint& b, const SplitTangent& a,
                               const SplitTangent& c) {
  return theta_differential(*w.manifold(), b, isotropic_apply(w, b, a), c);
}

SplitTangent lift_bracket(const ManifoldPtr& m, const BundlePoint& b, const LiftField& a,
                          const LiftField& c) {
  const Vec& p = b.base;
  const bool ah = a.kind == LiftKind::Horizontal;
  const bool ch = c.kind == LiftKind::Horizontal;
  if (ah && ch) {
    const Vec x = a.field->value(p);
    const Vec y = c.field->value(p);
    return {lie_bracket(*m, p, *a.field, *c.field), -riemann(m, p, x, y, b.fiber)};
  }
  if (ah && !ch)
    return SplitTangent::vertical(covariant_derivative(*m, *c.field, p, a.field->value(p)));
  if (!ah && ch)
    return SplitTangent::vertical(-covariant_derivative(*m, *a.field, p, c.field->value(p)));
  return SplitTangent::zero(static_cast<int>(p.size()));
}

SplitTangent bundle_gradient(const WeightValues& w, const Differential& df) {
  // alpha h - sigma v = d_h f, -sigma h + delta v = d_v f; determinant 1.
  return {w.delta * df.h + w.sigma * df.v, w.sigma * df.h + w.alpha * df.v};
}

SplitTangent bundle_gradient(const WeightTriple& w, const BundlePoint& b, const Differential& df) {
  return bundle_gradient(w.checked_values(b), df);
}

ConnectionResult levi_civita_closed(const WeightTriple& w, const BundlePoint& b,
                                    const LiftField& xl, const LiftField& yl) {
  const ManifoldPtr& m = w.manifold();
  const Vec& p = b.base;
  const Vec& u = b.fiber;
  const WeightJet j = w.jet(b);
  w.check(j.value);
  const double al = j.value.alpha, de = j.value.delta, si = j.value.sigma;
  const Vec x = xl.field->value(p);
  const Vec y = yl.field->value(p);
  const double gxy = x.dot(y);

  const auto H = [](const Vec& z) { return SplitTangent::horizontal(z); };
  const auto V = [](const Vec& z) { return SplitTangent::vertical(z); };
  const auto hx = [&](const Differential& d) { return d.h.dot(x); };  // X^h(f)
  const auto vx = [&](const Differential& d) { return d.v.dot(x); };  // X^v(f)
  const auto hy = [&](const Differential& d) { return d.h.dot(y); };
  const auto vy = [&](const Differential& d) { return d.v.dot(y); };

  ConnectionResult r{SplitTangent::zero(static_cast<int>(p.size())), {}};
  const auto add = [&r](std::string label, SplitTangent t) {
    r.value += t;
    r.terms.push_back({std::move(label), std::move(t)});
  };

  const bool xh = xl.kind == LiftKind::Horizontal;
  const bool yh = yl.kind == LiftKind::Horizontal;
  if (xh && yh) {
    const Vec nxy = covariant_derivative(*m, *yl.field, p, x);
    add("(nabla_X Y)^h", H(nxy));
    add("-(sigma/alpha)(R(u,X)Y)^h", -(si / al) * H(riemann(m, p, u, x, y)));
    add("(1/2alpha)X^h(alpha)Y^h", (hx(j.alpha) / (2 * al)) * H(y));
    add("(1/2alpha)Y^h(alpha)X^h", (hy(j.alpha) / (2 * al)) * H(x));
    add("-(sigma/delta)(nabla_X Y)^v", -(si / de) * V(nxy));
    add("-1/2(R(X,Y)u)^v", -0.5 * V(riemann(m, p, x, y, u)));
    add("-(1/2delta)X^h(sigma)Y^v", -(hx(j.sigma) / (2 * de)) * V(y));
    add("-(1/2delta)Y^h(sigma)X^v", -(hy(j.sigma) / (2 * de)) * V(x));
    add("-1/2 g(X,Y) grad alpha", -0.5 * gxy * bundle_gradient(j.value, j.alpha));
  } else if (xh && !yh) {
    const Vec nxy = covariant_derivative(*m, *yl.field, p, x);
    add("-(sigma/alpha)(nabla_X Y)^h", -(si / al) * H(nxy));
    add("(delta/2alpha)(R(u,Y)X)^h", (de / (2 * al)) * H(riemann(m, p, u, y, x)));
    add("-(1/2alpha)X^h(sigma)Y^h", -(hx(j.sigma) / (2 * al)) * H(y));
    add("(1/2alpha)Y^v(alpha)X^h", (vy(j.alpha) / (2 * al)) * H(x));
    add("(nabla_X Y)^v", V(nxy));
    add("(1/2delta)X^h(delta)Y^v", (hx(j.delta) / (2 * de)) * V(y));
    add("-(1/2delta)Y^v(sigma)X^v", -(vy(j.sigma) / (2 * de)) * V(x));
    add("1/2 g(X,Y) grad sigma", 0.5 * gxy * bundle_gradient(j.value, j.sigma));
  } else if (!xh && yh) {
    add("(delta/2alpha)(R(u,X)Y)^h", (de / (2 * al)) * H(riemann(m, p, u, x, y)));
    add("(1/2alpha)X^v(alpha)Y^h", (vx(j.alpha) / (2 * al)) * H(y));
    add("-(1/2alpha)Y^h(sigma)X^h", -(hy(j.sigma) / (2 * al)) * H(x));
    add("-(1/2delta)X^v(sigma)Y^v", -(vx(j.sigma) / (2 * de)) * V(y));
    add("(1/2delta)Y^h(delta)X^v", (hy(j.delta) / (2 * de)) * V(x));
    add("1/2 g(X,Y) grad sigma", 0.5 * gxy * bundle_gradient(j.value, j.sigma));
  } else {
    add("-(1/2alpha)X^v(sigma)Y^h", -(vx(j.sigma) / (2 * al)) * H(y));
    add("-(1/2alpha)Y^v(sigma)X^h", -(vy(j.sigma) / (2 * al)) * H(x));
    add("(1/2delta)X^v(delta)Y^v", (vx(j.delta) / (2 * de)) * V(y));
    add("(1/2delta)Y^v(delta)X^v", (vy(j.delta) / (2 * de)) * V(x));
    add("-1/2 g(X,Y) grad delta", -0.5 * gxy * bundle_gradient(j.value, j.delta));
  }
  return r;
}

SplitTangent levi_civita_koszul(const WeightTriple& w, const BundlePoint& b, const LiftField& a,
                                const LiftField& c) {
  const ManifoldPtr& m = w.manifold();
  const Vec& p = b.base;
  const int n = m->dim();
  const WeightValues wv = w.checked_values(b);

  const auto coefficient = [](const WeightValues& v, LiftKind k1, LiftKind k2) {
    if (k1 != k2) return -v.sigma;
    return k1 == LiftKind::Horizontal ? v.alpha : v.delta;
  };
  // G(P, Q) as a function on TM.
  const auto metric_fn = [&](const LiftField& pl, const LiftField& ql) {
    return [&w, &pl, &ql, coefficient](const BundlePoint& q) {
      const WeightValues v = w.values(q);
      return coefficient(v, pl.kind, ql.kind) *
             pl.field->value(q.base).dot(ql.field->value(q.base));
    };
  };

  const SplitTangent a_b = a.at(b);
  const SplitTangent c_b = c.at(b);
  const SplitTangent ac = lift_bracket(m, b, a, c);

  const FrameFields frame = m->frame_fields(p);
  BundleVec rhs(2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    const FieldPtr& e = frame[static_cast<std::size_t>(k % n)];
    const LiftField z{k < n ? LiftKind::Horizontal : LiftKind::Vertical, e};
    const SplitTangent z_b = z.at(b);
    double s = tm_derivative(*m, metric_fn(c, z), b, a_b);
    s += tm_derivative(*m, metric_fn(a, z), b, c_b);
    s -= tm_derivative(*m, metric_fn(a, c), b, z_b);
    s += bundle_metric_eval(wv, ac, z_b);
    s -= bundle_metric_eval(wv, lift_bracket(m, b, c, z), a_b);
    s += bundle_metric_eval(wv, lift_bracket(m, b, z, a), c_b);
    rhs(k) = 0.5 * s;
  }
  const BundleMat gram = lift_gram(wv, n);
  const BundleVec coef = gram.ldlt().solve(rhs);
  SplitTangent out = SplitTangent::zero(static_cast<int>(p.size()));
  for (int k = 0; k < n; ++k) {
    const Vec e = frame[static_cast<std::size_t>(k)]->value(p);
    out.h += coef(k) * e;
    out.v += coef(n + k) * e;
  }
  return out;
}

SplitTangent levi_civita(ConnectionRoute route, const WeightTriple& w, const BundlePoint& b,
                         const LiftField& x, const LiftField& y) {
  return route == ConnectionRoute::Closed ? levi_civita_closed(w, b, x, y).value
                                          : levi_civita_koszul(w, b, x, y);
}

SplitTangent sphere_normal(const WeightTriple& w, const BundlePoint& b) {
  const WeightValues v = w.checked_values(b);
  if (v.sigma != 0.0)
    throw UnsupportedError("sphere_normal: only sigma = 0 is supported");
  if (std::abs(b.fiber.squaredNorm() - 1.0) > 1e-10)
    throw PreconditionError("sphere_normal: fiber is not a unit vector");
  return (1.0 / std::sqrt(v.delta)) * SplitTangent::vertical(b.fiber);
}

}  // namespace hvf
