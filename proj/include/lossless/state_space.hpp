#pragma once

#include <string>

#include "lossless/matrix.hpp"

namespace lossless {

/// x_{t+1} = A x_t + B u_t,  y_t = C x_t + D u_t.
///
/// C and D may be empty (0 rows) when only the input pair (A, B) matters.
struct StateSpace {
  Matrix A;
  Matrix B;
  Matrix C;
  Matrix D;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
  int p() const { return static_cast<int>(C.rows()); }
  bool has_output() const { return C.rows() > 0; }

  void validate() const {
    if (A.rows() != A.cols()) throw DimensionError("StateSpace: A not square");
    if (B.rows() != A.rows()) {
      throw DimensionError("StateSpace: B must have n=" +
                           std::to_string(A.rows()) + " rows");
    }
    if (has_output()) {
      if (C.cols() != A.rows()) {
        throw DimensionError("StateSpace: C must have n columns");
      }
      if (D.rows() != C.rows() || D.cols() != B.cols()) {
        throw DimensionError("StateSpace: D must be p x m");
      }
    }
  }

  /// The realization matrix [[D, C], [B, A]]; requires C and D.
  Matrix realization_matrix() const {
    validate();
    if (!has_output()) {
      throw DimensionError("StateSpace: realization matrix needs C and D");
    }
    Matrix r(p() + n(), m() + n());
    r << D, C, B, A;
    return r;
  }

  /// [B, A].
  Matrix input_pair() const {
    Matrix ba(n(), m() + n());
    ba << B, A;
    return ba;
  }
};

}  // namespace lossless
