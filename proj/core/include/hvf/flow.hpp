#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hvf/discrete_field.hpp"
#include "hvf/energy.hpp"

namespace hvf {

struct FlowOptions {
  int steps = 500;
  double step0 = 0.05;
  double tolerance = 1e-6;  // on max_k |K(tau_1)| at the nodes
  double max_step = 1.0;
  int grow_after = 5;       // consecutive accepts before the step doubles
  double min_step = 1e-14;  // below this the flow reports a stall
};

struct FlowRecord {
  int step;
  double energy;
  double residual;
  double step_size;  // accepted step; 0 for the initial record
};

struct FlowTrace {
  std::vector<FlowRecord> records;
  int accepted = 0;
  bool converged = false;
  bool stalled = false;
};

/// Energy and vertical restricted tension at every node of a discrete field.
struct NodalState {
  double energy = 0.0;
  double residual = 0.0;             // max_k |K(tau_1)(p_k)|
  std::vector<Vec> tension;          // K(tau_1) at each node, ambient
  std::vector<double> grad_norm_sq;  // |nabla X|^2 at each node
};

/// Generic evaluation through the smooth interpolant.
NodalState evaluate_nodes_generic(const WeightTriple& w, const DiscreteUnitField& x);
/// Spectral evaluation on a flat torus (exact derivatives of the trigonometric
/// interpolant at the nodes); agrees with the generic route to rounding.
NodalState evaluate_nodes_spectral(const WeightTriple& w, const DiscreteUnitField& x);
/// Spectral on a torus, generic otherwise.
NodalState evaluate_nodes(const WeightTriple& w, const DiscreteUnitField& x);

struct FlowResult {
  DiscreteUnitField field;
  FlowTrace trace;
};

/// Projected descent x <- normalize(x + eta K(tau_1)) with backtracking; sigma = 0.
/// Energy is non-increasing along the returned trace.
FlowResult gradient_flow(const WeightTriple& w, const DiscreteUnitField& x0,
                         const FlowOptions& opts = {});

/// CSV with header step,energy,residual,step_size and %.17g values.
std::string trace_csv(const FlowTrace& trace);

}  // namespace hvf
