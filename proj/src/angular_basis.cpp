#include "rotorbell/angular_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rotorbell/errors.hpp"
#include "rotorbell/spectral.hpp"

namespace rotorbell {

namespace {

constexpr double kHermitianTol = 1e-12;

int abs_m(int m) { return m < 0 ? -m : m; }

}  // namespace

RotorSubspace::RotorSubspace(int j_max, int m) : j_max_(j_max), m_(m) {
  if (j_max < 0) {
    throw UsageError("j_max must be non-negative, got " + std::to_string(j_max));
  }
  if (abs_m(m) > j_max) {
    throw UsageError("|m| must not exceed j_max (j_max=" + std::to_string(j_max) +
                     ", m=" + std::to_string(m) + ")");
  }
}

int space_dim(const Space& space) {
  return std::visit([](const auto& s) { return s.dim(); }, space);
}

HermitianOperator::HermitianOperator(Space space, Eigen::MatrixXcd entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const int n = space_dim(space_);
  if (entries_.rows() != n || entries_.cols() != n) {
    throw UsageError("operator is " + std::to_string(entries_.rows()) + "x" +
                     std::to_string(entries_.cols()) + " but its space has dimension " +
                     std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) {
      if (std::abs(entries_(i, k) - std::conj(entries_(k, i))) > kHermitianTol) {
        throw NumericalError("operator is not Hermitian at (" + std::to_string(i) + ", " +
                             std::to_string(k) + ")");
      }
    }
  }
}

DiagonalUnitary::DiagonalUnitary(RotorSubspace subspace, Eigen::VectorXcd phases)
    : subspace_(subspace), phases_(std::move(phases)) {
  if (phases_.size() != subspace_.dim()) {
    throw UsageError("phase vector length does not match the subspace dimension");
  }
  for (Eigen::Index k = 0; k < phases_.size(); ++k) {
    if (std::abs(std::abs(phases_[k]) - 1.0) > kHermitianTol) {
      throw NumericalError("evolution phase " + std::to_string(k) + " is not unimodular");
    }
  }
}

double cos_theta_element(int j, int j_prime, int m) {
  if (j < 0 || j_prime < 0 || abs_m(m) > j || abs_m(m) > j_prime) {
    throw UsageError("cos_theta_element requires |m| <= min(j, j') (j=" + std::to_string(j) +
                     ", j'=" + std::to_string(j_prime) + ", m=" + std::to_string(m) + ")");
  }
  if (j_prime == j - 1) {
    std::swap(j, j_prime);
  } else if (j_prime != j + 1) {
    return 0.0;
  }
  const double jj = j;
  const double mm = m;
  return std::sqrt(((jj + 1) * (jj + 1) - mm * mm) / ((2 * jj + 1) * (2 * jj + 3)));
}

HermitianOperator build_cos_theta(const RotorSubspace& subspace) {
  const int n = subspace.dim();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double v = cos_theta_element(subspace.j_of(k), subspace.j_of(k + 1), subspace.m());
    c(k, k + 1) = v;
    c(k + 1, k) = v;
  }
  return {subspace, std::move(c)};
}

DiagonalUnitary build_evolution(const RotorSubspace& subspace, double t) {
  const int n = subspace.dim();
  Eigen::VectorXcd phases(n);
  for (int k = 0; k < n; ++k) {
    // j(j+1) is even, so only the fractional part of t matters.
    const long long jj = static_cast<long long>(subspace.j_of(k)) * (subspace.j_of(k) + 1);
    const double angle = std::fmod(static_cast<double>(jj) * std::fmod(t, 1.0), 2.0);
    phases[k] = std::polar(1.0, -std::numbers::pi * angle);
  }
  return {subspace, std::move(phases)};
}

HermitianOperator evolve_operator(const HermitianOperator& op, double t) {
  if (!op.is_single_molecule()) {
    throw UsageError("evolve_operator acts on single-molecule operators only");
  }
  const auto& subspace = std::get<RotorSubspace>(op.space());
  const Eigen::VectorXcd u = build_evolution(subspace, t).phases();
  Eigen::MatrixXcd out = u.conjugate().asDiagonal() * op.matrix() * u.asDiagonal();
  // Restore exact Hermiticity lost to rounding in the two products.
  Eigen::MatrixXcd herm = 0.5 * (out + out.adjoint());
  return {subspace, std::move(herm)};
}

EigenDecomposition orientation_eigensystem(const RotorSubspace& subspace) {
  return hermitian_eig(build_cos_theta(subspace));
}

double lambda_max(const RotorSubspace& subspace) {
  return orientation_eigensystem(subspace).max_value();
}

}  // namespace rotorbell
