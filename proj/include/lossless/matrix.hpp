#pragma once

#include <Eigen/Dense>

#include <string>

#include "lossless/errors.hpp"

namespace lossless {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Default zero/positivity threshold for pivot tests.
inline constexpr double kPivotTol = 1e-9;

inline double max_abs(const Eigen::Ref<const Matrix>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// max |MᵀM - I|.
inline double orthogonality_residual(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("orthogonality_residual: matrix is not square");
  }
  return max_abs(m.transpose() * m - Matrix::Identity(m.rows(), m.cols()));
}

/// max |MMᵀ - I|, i.e. how far the rows are from being orthonormal.
inline double row_orthonormality_residual(const Eigen::Ref<const Matrix>& m) {
  return max_abs(m * m.transpose() - Matrix::Identity(m.rows(), m.rows()));
}

/// max |lambda_i(A)|.
inline double spectral_radius(const Eigen::Ref<const Matrix>& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("spectral_radius: matrix is not square");
  }
  if (a.size() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw DomainError("spectral_radius: eigenvalue iteration failed");
  }
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline void require_square(const Eigen::Ref<const Matrix>& m,
                           const std::string& who) {
  if (m.rows() != m.cols()) {
    throw DimensionError(who + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

}  // namespace lossless
