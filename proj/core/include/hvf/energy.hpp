#pragma once

#include "hvf/harmonicity.hpp"

namespace hvf {

/// n alpha + delta |nabla X|^2 at (p, X(p)); sigma = 0, X unit.
double energy_density(const WeightTriple& w, const VectorField& x, const Vec& p);

/// (1/2) * integral of energy_density over the level-`level` quadrature.
double energy(const WeightTriple& w, const VectorField& x, int level);

/// sum_i G(X_* V_i, X_* V_i) - (n alpha + delta |nabla X|^2), with X_* V = (V, nabla_V X).
double hilbert_schmidt_check(const WeightTriple& w, const VectorField& x, const Vec& p);

enum class PairingRoute {
  Fast,    // closed sigma = 0 vertical restricted tension
  Oracle,  // vertical part of the projected trace of beta
};

struct FirstVariation {
  double numeric;  // centred difference of E((X + tV)/|X + tV|) at t = +-1e-4
  double pairing;  // -integral of g_{delta,0}(V^v, tau_1)
};

inline constexpr double kVariationStep = 1e-4;

/// V must be orthogonal to X at every quadrature node.
FirstVariation first_variation(const WeightTriple& w, const FieldPtr& x, const FieldPtr& v,
                               int level, PairingRoute route = PairingRoute::Fast,
                               ConnectionRoute connection = ConnectionRoute::Closed);

}  // namespace hvf
