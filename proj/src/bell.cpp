#include "rotorbell/bell.hpp"

#include <cmath>
#include <string>

#include "rotorbell/errors.hpp"
#include "rotorbell/spectral.hpp"

namespace rotorbell {

namespace {

// Orientation eigenvalues at or below this are counted as negatively oriented.
constexpr double kZeroOrientation = 1e-12;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::Index ra = a.rows();
  const Eigen::Index rb = b.rows();
  Eigen::MatrixXcd out(ra * rb, ra * rb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index k = 0; k < ra; ++k) {
      out.block(i * rb, k * rb, rb, rb) = a(i, k) * b;
    }
  }
  return out;
}

// A (x) (B + B') + A' (x) (B - B'), which expands to the CHSH combination
// AB + AB' + A'B - A'B'.
HermitianOperator chsh_combination(const TwoMoleculeSpace& space, const HermitianOperator& left,
                                   const HermitianOperator& right, const BellSettings& s) {
  const Eigen::MatrixXcd a = evolve_operator(left, s.t1).matrix();
  const Eigen::MatrixXcd a_prime = evolve_operator(left, s.t1_prime).matrix();
  const Eigen::MatrixXcd b = evolve_operator(right, s.t2).matrix();
  const Eigen::MatrixXcd b_prime = evolve_operator(right, s.t2_prime).matrix();
  Eigen::MatrixXcd out = kron(a, b + b_prime) + kron(a_prime, b - b_prime);
  return {space, std::move(out)};
}

void require_finite(const BellSettings& s) {
  if (!std::isfinite(s.t1) || !std::isfinite(s.t2) || !std::isfinite(s.t1_prime) ||
      !std::isfinite(s.t2_prime)) {
    throw UsageError("Bell settings must be finite times");
  }
}

}  // namespace

HermitianOperator correlation_operator(const TwoMoleculeSpace& space, double t1, double t2) {
  const auto left = evolve_operator(build_cos_theta(space.left), t1);
  const auto right = evolve_operator(build_cos_theta(space.right), t2);
  return {space, kron(left.matrix(), right.matrix())};
}

HermitianOperator bell_b1(const TwoMoleculeSpace& space, const BellSettings& s) {
  return BellFamily(BellKind::B1, space).at(s);
}

HermitianOperator dichotomized_projector(const RotorSubspace& subspace) {
  const auto eig = orientation_eigensystem(subspace);
  Eigen::VectorXd sign(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < sign.size(); ++k) {
    sign[k] = eig.eigenvalues[k] > kZeroOrientation ? 1.0 : -1.0;
  }
  const Eigen::MatrixXcd& v = eig.eigenvectors;
  Eigen::MatrixXcd pi = v * sign.asDiagonal() * v.adjoint();
  Eigen::MatrixXcd herm = 0.5 * (pi + pi.adjoint());
  return {subspace, std::move(herm)};
}

HermitianOperator bell_b2(const TwoMoleculeSpace& space, const BellSettings& s) {
  return BellFamily(BellKind::B2, space).at(s);
}

HermitianOperator bell_operator(BellKind kind, const TwoMoleculeSpace& space,
                                const BellSettings& s) {
  return BellFamily(kind, space).at(s);
}

namespace {

HermitianOperator base_observable(BellKind kind, const RotorSubspace& subspace) {
  return kind == BellKind::B1 ? build_cos_theta(subspace) : dichotomized_projector(subspace);
}

}  // namespace

BellFamily::BellFamily(BellKind kind, const TwoMoleculeSpace& space)
    : kind_(kind),
      space_(space),
      left_(base_observable(kind, space.left)),
      right_(base_observable(kind, space.right)) {}

HermitianOperator BellFamily::at(const BellSettings& s) const {
  require_finite(s);
  return chsh_combination(space_, left_, right_, s);
}

double local_bound_b1(const TwoMoleculeSpace& space) {
  return 2.0 * lambda_max(space.left) * lambda_max(space.right);
}

double local_bound(BellKind kind, const TwoMoleculeSpace& space) {
  return kind == BellKind::B1 ? local_bound_b1(space) : kLocalBoundB2;
}

double relative_violation(double beta, double bound) {
  if (!(bound > 0.0)) {
    throw UsageError("relative violation needs a positive bound, got " + std::to_string(bound));
  }
  return (beta - bound) / bound;
}

double noise_threshold(double s_max, double bound) {
  if (!(bound > 0.0)) {
    throw UsageError("noise threshold needs a positive bound, got " + std::to_string(bound));
  }
  if (!(s_max > bound)) {
    throw UsageError("no violation to protect: s_max=" + std::to_string(s_max) +
                     " <= bound=" + std::to_string(bound));
  }
  return 1.0 - bound / s_max;
}

DensityMatrix werner_state(const TwoMoleculeSpace& space, const QuantumState& s_max_state,
                           double p_noise) {
  if (!(p_noise >= 0.0 && p_noise <= 1.0)) {
    throw UsageError("P_N must lie in [0, 1], got " + std::to_string(p_noise));
  }
  if (s_max_state.space() != Space{space}) {
    throw UsageError("state does not live on the requested two-molecule space");
  }
  const int n = space.dim();
  const Eigen::VectorXcd& s = s_max_state.amplitudes();
  Eigen::MatrixXcd rho = (p_noise / n) * Eigen::MatrixXcd::Identity(n, n) +
                         (1.0 - p_noise) * (s * s.adjoint());
  return {space, std::move(rho)};
}

double werner_expectation(const TwoMoleculeSpace& space, const HermitianOperator& op,
                          const QuantumState& s_max_state, double p_noise) {
  if (!(p_noise >= 0.0 && p_noise <= 1.0)) {
    throw UsageError("P_N must lie in [0, 1], got " + std::to_string(p_noise));
  }
  if (op.space() != Space{space} || s_max_state.space() != Space{space}) {
    throw UsageError("operator and state must live on the requested two-molecule space");
  }
  const Eigen::VectorXcd& s = s_max_state.amplitudes();
  const double mixed = op.matrix().trace().real() / space.dim();
  const double pure = s.dot(op.matrix() * s).real();
  return p_noise * mixed + (1.0 - p_noise) * pure;
}

}  // namespace rotorbell
