#include "rotorbell/entanglement.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "rotorbell/errors.hpp"
#include "rotorbell/spectral.hpp"

namespace rotorbell {

namespace {

const TwoMoleculeSpace& two_molecule_space(const QuantumState& state, const char* what) {
  const auto* space = std::get_if<TwoMoleculeSpace>(&state.space());
  if (space == nullptr) {
    throw UsageError(std::string(what) + " requires a two-molecule state");
  }
  return *space;
}

}  // namespace

DensityMatrix reduced_density(const QuantumState& state, Side keep) {
  const auto& space = two_molecule_space(state, "reduced_density");
  const int nl = space.left.dim();
  const int nr = space.right.dim();
  // Row-major reshape: psi(kl, kr) = amplitudes[kl * nr + kr].
  const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      psi(state.amplitudes().data(), nl, nr);
  Eigen::MatrixXcd rho;
  if (keep == Side::Left) {
    rho = psi * psi.adjoint();
  } else {
    rho = psi.transpose() * psi.conjugate();
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {keep == Side::Left ? Space{space.left} : Space{space.right}, std::move(rho)};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed on a density matrix");
  }
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()[k];
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double normalized_entropy(const DensityMatrix& rho, int j_max) {
  if (j_max <= 0) {
    throw UsageError("normalized entropy is undefined for j_max = " + std::to_string(j_max));
  }
  if (rho.dim() != j_max + 1) {
    throw UsageError("normalized entropy expects a density matrix of dimension j_max + 1 = " +
                     std::to_string(j_max + 1) + ", got " + std::to_string(rho.dim()));
  }
  return von_neumann_entropy(rho) / std::log(static_cast<double>(j_max + 1));
}

OrientedPopulation oriented_population(const QuantumState& state) {
  const auto& space = two_molecule_space(state, "oriented_population");
  if (space.left.dim() != space.right.dim()) {
    throw UsageError("oriented_population requires equal subspace dimensions");
  }
  const auto left = orientation_eigensystem(space.left).eigenvectors;
  const auto right = orientation_eigensystem(space.right).eigenvectors;
  const Eigen::Index top = left.cols() - 1;
  auto overlap = [&](Eigen::Index col) {
    Eigen::VectorXcd target(space.dim());
    const int nr = space.right.dim();
    for (int a = 0; a < space.left.dim(); ++a) {
      target.segment(a * nr, nr) = left(a, col) * right.col(col);
    }
    return std::norm(target.dot(state.amplitudes()));
  };
  return {overlap(top), overlap(0)};
}

QuantumState oriented_bell_state(const TwoMoleculeSpace& space, int sign) {
  if (space.left.dim() < 2 || space.right.dim() < 2) {
    throw UsageError("oriented Bell states need at least two orientation states per molecule");
  }
  const auto left = orientation_eigensystem(space.left).eigenvectors;
  const auto right = orientation_eigensystem(space.right).eigenvectors;
  const QuantumState plus = QuantumState::product(
      QuantumState(space.left, left.col(left.cols() - 1)),
      QuantumState(space.right, right.col(right.cols() - 1)));
  const QuantumState minus = QuantumState::product(QuantumState(space.left, left.col(0)),
                                                   QuantumState(space.right, right.col(0)));
  Eigen::VectorXcd amp = plus.amplitudes() + (sign >= 0 ? 1.0 : -1.0) * minus.amplitudes();
  amp.normalize();
  return {space, std::move(amp)};
}

}  // namespace rotorbell
