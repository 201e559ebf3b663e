#pragma once

#include "hvf/bundle.hpp"
#include "hvf/field_calculus.hpp"

namespace hvf {

/// beta(Z, W) of X : M -> (TM, g_{delta,sigma}) at p, with Z and W extended by
/// constant coefficients in the frame at p:
///   nabla_{Z^h} W^h + nabla_{Z^h} (nabla_W X)^v + nabla_{(nabla_Z X)^v} W^h
///   + nabla_{(nabla_Z X)^v} (nabla_W X)^v - (nabla_Z W)^h - (nabla_{nabla_Z W} X)^v
/// at b = (p, X(p)).
SplitTangent second_fundamental_form(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                                     const Vec& z, const Vec& wv,
                                     ConnectionRoute route = ConnectionRoute::Closed);

/// sum_i beta(V_i, V_i) over the frame at p.
SplitTangent tension_trace(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                           ConnectionRoute route = ConnectionRoute::Closed);

/// The closed tension formula term by term; its vertical brace carries
/// delta * sum_i [nabla_{V_i} nabla_{V_i} X - nabla_{nabla_{V_i} V_i} X].
SplitTangent tension_closed_form(const WeightTriple& w, const FieldPtr& x, const Vec& p);

struct TensionResult {
  SplitTangent tau;     // trace of beta
  SplitTangent closed;  // closed form
  double gap;           // g_{delta,sigma}-norm of tau - closed
};

TensionResult tension(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                      ConnectionRoute route = ConnectionRoute::Closed);

/// tau - g(tau, N) N with N the unit normal of S(M); sigma = 0, X unit.
SplitTangent restricted_tension(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                                ConnectionRoute route = ConnectionRoute::Closed);

/// sum_i (V_i^h(delta) + (nabla_{V_i} X)^v(delta)) nabla_{V_i} X
Vec delta_section_term(const WeightTriple& w, const VectorField& x, const Vec& p);

/// Right side of the harmonicity balance for Delta_g X (sigma = 0, X unit).
Vec harmonicity_rhs(const WeightTriple& w, const VectorField& x, const Vec& p);

/// Vertical part of the restricted tension for sigma = 0 from the closed
/// sigma = 0 expression; this is what the energy flow descends along.
Vec restricted_tension_vertical(const WeightTriple& w, const FieldPtr& x, const Vec& p);

struct TensionReport {
  Vec point;
  SplitTangent tau;
  SplitTangent tau1;
  double normal_component = 0.0;
  Vec balance_lhs;
  Vec balance_rhs;
  double residual_norm = 0.0;
  double closed_form_vs_oracle_gap = 0.0;
  Vec delta_term;
  double grad_norm_sq = 0.0;
  /// |K(tau_1)| from the beta trace; vanishes exactly at harmonic unit fields.
  double vertical_tension_norm = 0.0;
  /// g_{delta,0}(tau_1, N); zero by construction.
  double tau1_normal = 0.0;
};

TensionReport harmonicity_residual(const WeightTriple& w, const FieldPtr& x, const Vec& p,
                                   ConnectionRoute route = ConnectionRoute::Closed);

}  // namespace hvf
