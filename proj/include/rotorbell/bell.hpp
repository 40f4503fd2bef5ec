#pragma once

// Two-molecule orientation correlations and the temporal CHSH operators
//
//   B1 = C(t1,t2) + C(t1,t2') + C(t1',t2) - C(t1',t2'),  C(a,b) = O1(a) (x) O2(b)
//
// with O_i(t) the evolved cos(theta), and B2 the same combination built from
// the dichotomized observable Pi = Pi_+ - Pi_-.

#include "rotorbell/angular_basis.hpp"
#include "rotorbell/state.hpp"

namespace rotorbell {

struct BellSettings {
  double t1 = 0.0;
  double t2 = 0.0;
  double t1_prime = 0.0;
  double t2_prime = 0.0;

  // Grid coordinates (t1, t2) of a scan map onto B(0, 0, t1, t2). Every
  // four-time setting shares its spectrum with canonical(t1' - t1, t2' - t2).
  static BellSettings canonical(double t1, double t2) { return {0.0, 0.0, t1, t2}; }
  BellSettings canonicalized() const { return canonical(t1_prime - t1, t2_prime - t2); }
};

enum class BellKind { B1, B2 };

HermitianOperator correlation_operator(const TwoMoleculeSpace& space, double t1, double t2);

HermitianOperator bell_b1(const TwoMoleculeSpace& space, const BellSettings& s);

// Pi_+ - Pi_- over the orientation eigenbasis. Zero-orientation states fall in
// the negative class.
HermitianOperator dichotomized_projector(const RotorSubspace& subspace);

HermitianOperator bell_b2(const TwoMoleculeSpace& space, const BellSettings& s);

HermitianOperator bell_operator(BellKind kind, const TwoMoleculeSpace& space,
                                const BellSettings& s);

// Caches the two unevolved single-molecule observables so repeated settings
// (scans, refinement) only pay for evolution and the tensor products.
class BellFamily {
 public:
  BellFamily(BellKind kind, const TwoMoleculeSpace& space);

  HermitianOperator at(const BellSettings& s) const;
  BellKind kind() const { return kind_; }
  const TwoMoleculeSpace& space() const { return space_; }

 private:
  BellKind kind_;
  TwoMoleculeSpace space_;
  HermitianOperator left_;
  HermitianOperator right_;
};

// Local-realism bound 2 * lambda_max(left) * lambda_max(right).
double local_bound_b1(const TwoMoleculeSpace& space);

// Dichotomized observables are +-1 valued, so the local bound is 2.
inline constexpr double kLocalBoundB2 = 2.0;

// The j_max -> infinity bound, where lambda_max -> 1.
inline constexpr double kInfiniteBound = 2.0;

double local_bound(BellKind kind, const TwoMoleculeSpace& space);

double relative_violation(double beta, double bound);

// Largest white-noise fraction P_N that still violates: 1 - bound / s_max.
double noise_threshold(double s_max, double bound);

// Tr[op rho] for rho = P_N * I / N + (1 - P_N) |s><s|.
double werner_expectation(const TwoMoleculeSpace& space, const HermitianOperator& op,
                          const QuantumState& s_max_state, double p_noise);

// Werner-like mixture itself, for callers that need rho explicitly.
DensityMatrix werner_state(const TwoMoleculeSpace& space, const QuantumState& s_max_state,
                           double p_noise);

}  // namespace rotorbell
