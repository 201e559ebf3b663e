#pragma once

#include <string>
#include <vector>

#include "hvf/bundle_point.hpp"
#include "hvf/weights.hpp"

namespace hvf {

enum class LiftKind { Horizontal, Vertical };

const char* lift_kind_name(LiftKind k);

/// X^h or X^v for a vector field X on M.
struct LiftField {
  LiftKind kind;
  FieldPtr field;

  static LiftField horizontal(FieldPtr f) { return {LiftKind::Horizontal, std::move(f)}; }
  static LiftField vertical(FieldPtr f) { return {LiftKind::Vertical, std::move(f)}; }
  SplitTangent at(const BundlePoint& b) const;
};

/// J(h, v) = (sigma h - delta v, alpha h - sigma v).
SplitTangent isotropic_apply(const WeightTriple& w, const BundlePoint& b, const SplitTangent& a);
SplitTangent isotropic_apply(const WeightValues& w, const SplitTangent& a);

/// Theta_b(A) = g(A.h, u).
double canonical_one_form(const BundlePoint& b, const SplitTangent& a);

/// alpha g(h,h') - sigma g(h,v') - sigma g(v,h') + delta g(v,v').
double bundle_metric_eval(const WeightTriple& w, const BundlePoint& b, const SplitTangent& a,
                          const SplitTangent& c);
double bundle_metric_eval(const WeightValues& w, const SplitTangent& a, const SplitTangent& c);

/// Gram matrix of g_{delta,sigma} in the basis (E_1^h..E_n^h, E_1^v..E_n^v) of an
/// orthonormal frame.
BundleMat lift_gram(const WeightValues& w, int n);

/// dTheta(A, B) = A Theta(B) - B Theta(A) - Theta([A, B]) for the constant-coefficient
/// frame-lift extensions of A and B, with derivatives by finite differences on TM.
double theta_differential(const Manifold& m, const BundlePoint& b, const SplitTangent& a,
                          const SplitTangent& c);
/// dTheta(J A, B); should reproduce bundle_metric_eval.
double metric_from_theta_check(const WeightTriple& w, const BundlePoint& b, const SplitTangent& a,
                               const SplitTangent& c);

/// [A, B] at b for lift fields: [X^h,Y^h] = [X,Y]^h - (R(X,Y)u)^v,
/// [X^h,Y^v] = (nabla_X Y)^v, [X^v,Y^v] = 0.
SplitTangent lift_bracket(const ManifoldPtr& m, const BundlePoint& b, const LiftField& a,
                          const LiftField& c);

/// Gradient of f with respect to g_{delta,sigma}: G(grad f, A) = df(A).
SplitTangent bundle_gradient(const WeightValues& w, const Differential& df);
SplitTangent bundle_gradient(const WeightTriple& w, const BundlePoint& b, const Differential& df);

struct ConnectionTerm {
  std::string label;
  SplitTangent value;
};

struct ConnectionResult {
  SplitTangent value;
  std::vector<ConnectionTerm> terms;
};

/// The closed-form connection of g_{delta,sigma} on lift fields, term by term.
ConnectionResult levi_civita_closed(const WeightTriple& w, const BundlePoint& b,
                                    const LiftField& x, const LiftField& y);

/// nabla_A B from the Koszul formula against the frame-lift basis, with
/// finite-difference derivatives of metric coefficients and the lift brackets;
/// the Gram system is then solved for the components.
SplitTangent levi_civita_koszul(const WeightTriple& w, const BundlePoint& b, const LiftField& x,
                                const LiftField& y);

enum class ConnectionRoute { Closed, Koszul };
SplitTangent levi_civita(ConnectionRoute route, const WeightTriple& w, const BundlePoint& b,
                         const LiftField& x, const LiftField& y);

/// Unit normal (0, u) / sqrt(delta) of S(M) in (TM, g_{delta,0}); sigma != 0 is unsupported.
SplitTangent sphere_normal(const WeightTriple& w, const BundlePoint& b);

}  // namespace hvf
