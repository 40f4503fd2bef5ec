#include "rotorbell/state.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "rotorbell/errors.hpp"

namespace rotorbell {

namespace {
constexpr double kTol = 1e-12;
}

QuantumState::QuantumState(Space space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_dim(space_)) {
    throw UsageError("state has " + std::to_string(amplitudes_.size()) +
                     " amplitudes but its space has dimension " +
                     std::to_string(space_dim(space_)));
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kTol) {
    throw NumericalError("state is not normalized (norm " + std::to_string(amplitudes_.norm()) +
                         ")");
  }
}

QuantumState QuantumState::product(const QuantumState& left, const QuantumState& right) {
  const auto* l = std::get_if<RotorSubspace>(&left.space());
  const auto* r = std::get_if<RotorSubspace>(&right.space());
  if (l == nullptr || r == nullptr) {
    throw UsageError("product states are built from two single-molecule states");
  }
  const int nl = left.dim();
  const int nr = right.dim();
  Eigen::VectorXcd amp(nl * nr);
  for (int a = 0; a < nl; ++a) {
    amp.segment(a * nr, nr) = left.amplitudes()[a] * right.amplitudes();
  }
  amp.normalize();
  return {TwoMoleculeSpace{*l, *r}, std::move(amp)};
}

DensityMatrix::DensityMatrix(Space space, Eigen::MatrixXcd entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const int n = space_dim(space_);
  if (entries_.rows() != n || entries_.cols() != n) {
    throw UsageError("density matrix dimension does not match its space");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kTol) {
    throw NumericalError("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace().real() - 1.0) > kTol) {
    throw NumericalError("density matrix trace is " + std::to_string(entries_.trace().real()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_, Eigen::EigenvaluesOnly);
  if (es.info() == Eigen::Success && es.eigenvalues().minCoeff() < -kTol) {
    throw NumericalError("density matrix has a negative eigenvalue");
  }
}

}  // namespace rotorbell
