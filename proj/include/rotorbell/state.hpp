#pragma once

#include <Eigen/Dense>

#include "rotorbell/angular_basis.hpp"

namespace rotorbell {

// Normalized pure state; the norm is checked to 1e-12 on construction.
class QuantumState {
 public:
  QuantumState(Space space, Eigen::VectorXcd amplitudes);

  const Space& space() const { return space_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

  // |a> (x) |b>
  static QuantumState product(const QuantumState& left, const QuantumState& right);

 private:
  Space space_;
  Eigen::VectorXcd amplitudes_;
};

// Hermitian, unit-trace, positive semidefinite (eigenvalues >= -1e-12).
class DensityMatrix {
 public:
  DensityMatrix(Space space, Eigen::MatrixXcd entries);

  const Space& space() const { return space_; }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }

 private:
  Space space_;
  Eigen::MatrixXcd entries_;
};

}  // namespace rotorbell
