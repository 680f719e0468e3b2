#pragma once

// Dense Hermitian eigendecomposition: Householder reduction to tridiagonal
// form, a diagonal phase change that makes the tridiagonal real, then
// implicit QL with Wilkinson-style shifts.

#include <Eigen/Core>

namespace qlat {

struct HermitianEigen {
  /// Ascending.
  Eigen::VectorXd values;
  /// Column k is the normalized eigenvector of values(k). Empty when vectors
  /// were not requested.
  Eigen::MatrixXcd vectors;
  /// Largest number of QL sweeps spent on a single eigenvalue.
  int max_iterations = 0;
};

/// Throws InputError for a non-square or non-Hermitian (1e-10 relative)
/// matrix and NumericError when QL fails to converge in 60 sweeps.
HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& h, bool want_vectors = true);

}  // namespace qlat
