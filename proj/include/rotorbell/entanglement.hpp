#pragma once

#include <utility>

#include "rotorbell/angular_basis.hpp"
#include "rotorbell/state.hpp"

namespace rotorbell {

enum class Side { Left, Right };

// Partial trace over the other molecule.
DensityMatrix reduced_density(const QuantumState& state, Side keep);

// -sum p log p (natural log, 0 log 0 = 0).
double von_neumann_entropy(const DensityMatrix& rho);

// S / log(j_max + 1); rho must live on the m = 0 subspace of that j_max.
double normalized_entropy(const DensityMatrix& rho, int j_max);

struct OrientedPopulation {
  double plus_plus = 0.0;    // |<+lambda_max, +lambda_max|psi>|^2
  double minus_minus = 0.0;  // |<-lambda_max, -lambda_max|psi>|^2
};

OrientedPopulation oriented_population(const QuantumState& state);

// (|+,+> + sign |-,->) / sqrt(2) built from the maximally oriented states.
QuantumState oriented_bell_state(const TwoMoleculeSpace& space, int sign = +1);

}  // namespace rotorbell
