#pragma once

#include <vector>

#include <Eigen/Dense>

namespace mklab {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermiticityTolerance = 1e-10;

/// Dense Hermitian eigensolver: Householder reduction to a real symmetric
/// tridiagonal matrix followed by implicit-shift QL iteration.
class HermitianEigenSolver {
 public:
  /// Throws std::invalid_argument if X is not square or not Hermitian to
  /// kHermiticityTolerance (relative to max |X_ij|), NumericalError if QL
  /// fails to converge.
  explicit HermitianEigenSolver(const ComplexMatrix& x, bool compute_vectors = false);

  /// Nondecreasing.
  const std::vector<double>& eigenvalues() const noexcept { return values_; }
  /// Column j pairs with eigenvalues()[j]. Empty unless requested.
  const ComplexMatrix& eigenvectors() const noexcept { return vectors_; }

 private:
  std::vector<double> values_;
  ComplexMatrix vectors_;
};

/// Eigenvalues of a Hermitian matrix in nondecreasing order.
std::vector<double> eigen_hermitian(const ComplexMatrix& x);

/// max_j ||X v_j - lambda_j v_j||_2 / ||X||_F over the computed eigenpairs.
double relative_eigen_residual(const ComplexMatrix& x, const HermitianEigenSolver& solver);

}  // namespace mklab
