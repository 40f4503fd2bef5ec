#pragma once

#include <utility>

#include <Eigen/Dense>

#include "rotorbell/angular_basis.hpp"
#include "rotorbell/state.hpp"

namespace rotorbell {

// Ascending eigenvalues with column-orthonormal eigenvectors (column k pairs
// with eigenvalue k). Each eigenvector's largest-magnitude component is real
// and positive; ties go to the lowest index.
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  int source_dim = 0;

  double max_value() const { return eigenvalues[eigenvalues.size() - 1]; }
  double min_value() const { return eigenvalues[0]; }
};

// Full decomposition. Throws NumericalError if the QL iteration fails.
EigenDecomposition hermitian_eig(const HermitianOperator& op);

// Ascending eigenvalues only; skips the eigenvector accumulation.
Eigen::VectorXd hermitian_eigenvalues(const HermitianOperator& op);

// Largest eigenvalue and its (phase-fixed) eigenvector.
std::pair<double, QuantumState> max_eigenpair(const HermitianOperator& op);

// Applies the phase convention in place to every column.
void fix_phases(Eigen::MatrixXcd& vectors);

}  // namespace rotorbell
