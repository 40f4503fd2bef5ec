#pragma once

// Truncated rigid-rotor subspaces |j,m>, the cos(theta) orientation operator
// and free evolution U(t) = exp(-i*pi*J^2*t) with t in rotational periods.

#include <complex>
#include <variant>

#include <Eigen/Dense>

namespace rotorbell {

using cplx = std::complex<double>;

// Fixed-m sector spanned by |j,m>, j = |m| .. j_max. Index k <-> j = |m| + k.
class RotorSubspace {
 public:
  RotorSubspace(int j_max, int m);

  int j_max() const { return j_max_; }
  int m() const { return m_; }
  int dim() const { return j_max_ - (m_ < 0 ? -m_ : m_) + 1; }
  int j_of(int k) const { return (m_ < 0 ? -m_ : m_) + k; }

  friend bool operator==(const RotorSubspace&, const RotorSubspace&) = default;

 private:
  int j_max_;
  int m_;
};

// Bipartite space left (x) right, composite index k = k_left * dim_right + k_right.
struct TwoMoleculeSpace {
  RotorSubspace left;
  RotorSubspace right;

  int dim() const { return left.dim() * right.dim(); }
  bool symmetric() const { return left == right; }
  friend bool operator==(const TwoMoleculeSpace&, const TwoMoleculeSpace&) = default;
};

using Space = std::variant<RotorSubspace, TwoMoleculeSpace>;

int space_dim(const Space& space);

// Dense Hermitian matrix tagged with the space it acts on. Construction checks
// the dimension and Hermiticity to 1e-12 absolute.
class HermitianOperator {
 public:
  HermitianOperator(Space space, Eigen::MatrixXcd entries);

  const Space& space() const { return space_; }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  bool is_single_molecule() const { return std::holds_alternative<RotorSubspace>(space_); }

 private:
  Space space_;
  Eigen::MatrixXcd entries_;
};

class DiagonalUnitary {
 public:
  DiagonalUnitary(RotorSubspace subspace, Eigen::VectorXcd phases);

  const RotorSubspace& subspace() const { return subspace_; }
  const Eigen::VectorXcd& phases() const { return phases_; }

 private:
  RotorSubspace subspace_;
  Eigen::VectorXcd phases_;
};

// <j',m| cos(theta) |j,m>. Nonzero only for j' = j +- 1.
double cos_theta_element(int j, int j_prime, int m);

HermitianOperator build_cos_theta(const RotorSubspace& subspace);

DiagonalUnitary build_evolution(const RotorSubspace& subspace, double t);

// Heisenberg picture U^dagger(t) op U(t) for a single-molecule operator.
HermitianOperator evolve_operator(const HermitianOperator& op, double t);

struct EigenDecomposition;

// Spectrum of cos(theta) on the subspace; lambda_max and |+>, |-> are the
// last and first eigenpairs.
EigenDecomposition orientation_eigensystem(const RotorSubspace& subspace);

double lambda_max(const RotorSubspace& subspace);

}  // namespace rotorbell
