#include "rotorbell/spectral.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "rotorbell/errors.hpp"

namespace rotorbell {

namespace {

// Relative slack when deciding which component has the largest magnitude, so
// that equal-magnitude components resolve to the lowest index reproducibly.
constexpr double kPivotSlack = 1e-10;

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solve(const HermitianOperator& op, int options) {
  // Householder tridiagonalization followed by implicit symmetric QL/QR.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix(), options);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge (dimension " +
                         std::to_string(op.dim()) + ")");
  }
  return es;
}

}  // namespace

void fix_phases(Eigen::MatrixXcd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    auto col = vectors.col(c);
    const double peak = col.cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    Eigen::Index pivot = 0;
    while (std::abs(col[pivot]) < peak * (1.0 - kPivotSlack)) ++pivot;
    col *= std::conj(col[pivot]) / std::abs(col[pivot]);
    col[pivot] = std::abs(col[pivot]);
  }
}

EigenDecomposition hermitian_eig(const HermitianOperator& op) {
  auto es = solve(op, Eigen::ComputeEigenvectors);
  EigenDecomposition out;
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  out.source_dim = op.dim();
  fix_phases(out.eigenvectors);
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const HermitianOperator& op) {
  return solve(op, Eigen::EigenvaluesOnly).eigenvalues();
}

std::pair<double, QuantumState> max_eigenpair(const HermitianOperator& op) {
  auto eig = hermitian_eig(op);
  const Eigen::Index top = eig.eigenvalues.size() - 1;
  Eigen::VectorXcd v = eig.eigenvectors.col(top);
  v.normalize();
  return {eig.eigenvalues[top], QuantumState(op.space(), std::move(v))};
}

}  // namespace rotorbell
