#pragma once

// Balanced realizations of lossless systems from Schur parameters, with all
// interpolation points at the origin:
//
//   R = G_n ... G_1 R_0 D_1^T ... D_n^T
//
// where G_k embeds the (m+1)x(m+1) block V(v_k) at rows/cols n-k .. n-k+m,
// D_k embeds U(u_k) likewise, and R_0 = diag(I_n, D0). The product
// G_n ... G_1 R_0 is positive m-upper Hessenberg; with standard-basis
// directions the trailing product is a permutation matrix.

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "lossless/errors.hpp"
#include "lossless/matrix.hpp"
#include "lossless/state_space.hpp"
#include "lossless/young.hpp"

namespace lossless::schur {

/// Schur vectors must satisfy ||v|| < 1 - kNormMargin.
inline constexpr double kNormMargin = 1e-12;
/// Orthogonality tolerance on D0 and on unit direction vectors.
inline constexpr double kOrthTol = 1e-10;

/// Coordinates within a chart: n Schur vectors and an orthogonal D0.
struct SchurParams {
  int m = 0;
  int n = 0;
  std::vector<Vector> v;
  Matrix D0;

  void validate() const {
    if (m < 1 || n < 1) throw ArgumentError("SchurParams: m,n must be >= 1");
    if (static_cast<int>(v.size()) != n) {
      throw DimensionError("SchurParams: expected " + std::to_string(n) +
                           " Schur vectors");
    }
    for (int k = 0; k < n; ++k) {
      if (v[k].size() != m) {
        throw DimensionError("SchurParams: v_" + std::to_string(k + 1) +
                             " must have length m");
      }
      if (!(v[k].norm() < 1.0 - kNormMargin)) {
        throw DomainError("SchurParams: ||v_" + std::to_string(k + 1) +
                          "|| = " + std::to_string(v[k].norm()) +
                          " is not < 1");
      }
    }
    if (D0.rows() != m || D0.cols() != m) {
      throw DimensionError("SchurParams: D0 must be m x m");
    }
    if (orthogonality_residual(D0) > kOrthTol) {
      throw DomainError("SchurParams: D0 is not orthogonal");
    }
  }
};

/// (m+n) x (m+n) realization matrix read as [[D, C], [B, A]].
class RealizationMatrix {
 public:
  RealizationMatrix(int m, int n, Matrix r) : m_(m), n_(n), r_(std::move(r)) {
    if (m_ < 1 || n_ < 1) {
      throw ArgumentError("RealizationMatrix: m,n must be >= 1");
    }
    if (r_.rows() != m_ + n_ || r_.cols() != m_ + n_) {
      throw DimensionError("RealizationMatrix: expected " +
                           std::to_string(m_ + n_) + "x" +
                           std::to_string(m_ + n_));
    }
  }

  int m() const { return m_; }
  int n() const { return n_; }
  const Matrix& matrix() const { return r_; }

  Matrix D() const { return r_.topLeftCorner(m_, m_); }
  Matrix C() const { return r_.topRightCorner(m_, n_); }
  Matrix B() const { return r_.bottomLeftCorner(n_, m_); }
  Matrix A() const { return r_.bottomRightCorner(n_, n_); }
  /// [B, A]
  Matrix input_pair() const { return r_.bottomRows(n_); }

 private:
  int m_;
  int n_;
  Matrix r_;
};

/// V = [[v, I - a v v^T], [sqrt(1 - |v|^2), -v^T]] with
/// a = 1 / (1 + sqrt(1 - |v|^2)).
inline Matrix build_V(const Eigen::Ref<const Vector>& v,
                      double margin = kNormMargin) {
  const Eigen::Index m = v.size();
  const double s = v.squaredNorm();
  if (!(std::sqrt(s) < 1.0 - margin)) {
    throw DomainError("build_V: Schur vector norm " +
                      std::to_string(std::sqrt(s)) + " is not < 1");
  }
  const double root = std::sqrt(1.0 - s);
  const double alpha = 1.0 / (1.0 + root);
  Matrix out(m + 1, m + 1);
  out.topLeftCorner(m, 1) = v;
  out.topRightCorner(m, m) =
      Matrix::Identity(m, m) - alpha * v * v.transpose();
  out(m, 0) = root;
  out.bottomRightCorner(1, m) = -v.transpose();
  return out;
}

/// U = [[u, I - u u^T], [0, u^T]].
inline Matrix build_U(const Eigen::Ref<const Vector>& u,
                      double tol = kOrthTol) {
  if (std::abs(u.norm() - 1.0) > tol) {
    throw DomainError("build_U: direction vector must have unit norm");
  }
  const Eigen::Index m = u.size();
  Matrix out = Matrix::Zero(m + 1, m + 1);
  out.topLeftCorner(m, 1) = u;
  out.topRightCorner(m, m) = Matrix::Identity(m, m) - u * u.transpose();
  out.bottomRightCorner(1, m) = u.transpose();
  return out;
}

inline Vector unit_vector(int m, int i) {
  if (i < 1 || i > m) {
    throw ArgumentError("direction index " + std::to_string(i) +
                        " outside 1.." + std::to_string(m));
  }
  return Vector::Unit(m, i - 1);
}

inline std::vector<Vector> directions_from_indices(std::span<const int> u_idx,
                                                   int m) {
  std::vector<Vector> out;
  out.reserve(u_idx.size());
  for (int i : u_idx) out.push_back(unit_vector(m, i));
  return out;
}

/// G_n ... G_1 R_0.
inline Matrix hessenberg_factor(const SchurParams& params) {
  params.validate();
  const int m = params.m;
  const int n = params.n;
  Matrix h = Matrix::Identity(m + n, m + n);
  h.bottomRightCorner(m, m) = params.D0;
  for (int k = 1; k <= n; ++k) {
    h.middleRows(n - k, m + 1) =
        build_V(params.v[k - 1]) * h.middleRows(n - k, m + 1);
  }
  return h;
}

/// D_1^T ... D_n^T for the given direction vectors.
inline Matrix direction_factor(std::span<const Vector> dirs, int m) {
  const int n = static_cast<int>(dirs.size());
  Matrix p = Matrix::Identity(m + n, m + n);
  for (int k = 1; k <= n; ++k) {
    if (dirs[k - 1].size() != m) {
      throw DimensionError("direction_factor: u_" + std::to_string(k) +
                           " must have length m");
    }
    p.middleCols(n - k, m + 1) =
        p.middleCols(n - k, m + 1) * build_U(dirs[k - 1]).transpose();
  }
  return p;
}

inline Matrix direction_factor(std::span<const int> u_idx, int m) {
  const std::vector<Vector> dirs = directions_from_indices(u_idx, m);
  return direction_factor(std::span<const Vector>(dirs), m);
}

/// The orthogonal realization matrix for general unit direction vectors.
inline RealizationMatrix build_R(const SchurParams& params,
                                 std::span<const Vector> dirs) {
  params.validate();
  if (static_cast<int>(dirs.size()) != params.n) {
    throw DimensionError("build_R: expected n direction vectors");
  }
  return {params.m, params.n,
          hessenberg_factor(params) * direction_factor(dirs, params.m)};
}

/// The orthogonal realization matrix for directions u_k = e_{u_idx[k-1]}.
inline RealizationMatrix build_R(const SchurParams& params,
                                 std::span<const int> u_idx) {
  params.validate();
  if (static_cast<int>(u_idx.size()) != params.n) {
    throw DimensionError("build_R: expected n direction indices");
  }
  const std::vector<Vector> dirs = directions_from_indices(u_idx, params.m);
  return build_R(params, std::span<const Vector>(dirs));
}

/// Location (1-based) of the first entry violating positive m-upper
/// Hessenberg structure, scanning columns left to right; {0,0} if none.
inline std::pair<int, int> first_hessenberg_violation(
    const Eigen::Ref<const Matrix>& a, int m, double tol) {
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    if (c + m < a.rows() && !(a(c + m, c) > tol)) {
      return {static_cast<int>(c + m) + 1, static_cast<int>(c) + 1};
    }
    for (Eigen::Index r = c + m + 1; r < a.rows(); ++r) {
      if (std::abs(a(r, c)) > tol) {
        return {static_cast<int>(r) + 1, static_cast<int>(c) + 1};
      }
    }
  }
  return {0, 0};
}

/// Sub-diagonal m strictly positive, everything below it zero (within tol).
inline bool is_positive_m_upper_hessenberg(const Eigen::Ref<const Matrix>& a,
                                           int m, double tol = kPivotTol) {
  require_square(a, "is_positive_m_upper_hessenberg");
  if (m < 0 || a.rows() < m) {
    throw DimensionError("is_positive_m_upper_hessenberg: size < m");
  }
  return first_hessenberg_violation(a, m, tol).first == 0;
}

/// u_{n+1-k} = e_{i(k)} where y(i(k), j(k)) = k.
inline std::vector<int> direction_vectors_from_chart(
    const young::NumberedYoungDiagram& y) {
  if (!young::is_admissible_diagram(y)) {
    throw InvalidStructure("direction_vectors_from_chart: diagram is not "
                           "admissible");
  }
  const int n = y.n();
  std::vector<int> u(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= n; ++k) u[n - k] = y.locate(k).first;
  return u;
}

/// Sufficient condition for an admissible pivot structure: whenever mu(k)
/// occurred before, at a largest l < k, mu(k+1) must be among
/// mu(l+1), ..., mu(k).
inline bool check_direction_condition(std::span<const int> mu) {
  const int n = static_cast<int>(mu.size());
  for (int v : mu) {
    if (v < 1) throw ArgumentError("check_direction_condition: index < 1");
  }
  for (int k = 1; k < n; ++k) {
    int l = 0;
    for (int t = k - 1; t >= 1; --t) {
      if (mu[t - 1] == mu[k - 1]) {
        l = t;
        break;
      }
    }
    if (l == 0) continue;
    bool found = false;
    for (int t = l + 1; t <= k && !found; ++t) found = mu[t - 1] == mu[k];
    if (!found) return false;
  }
  return true;
}

inline StateSpace extract_state_space(const RealizationMatrix& r) {
  return StateSpace{r.A(), r.B(), r.C(), r.D()};
}

inline StateSpace extract_state_space(const Eigen::Ref<const Matrix>& r,
                                      int m) {
  require_square(r, "extract_state_space");
  const int n = static_cast<int>(r.rows()) - m;
  if (m < 1 || n < 1) throw DimensionError("extract_state_space: size");
  return extract_state_space(RealizationMatrix(m, n, r));
}

/// D_k u_k - v_k for k = 1..n, where D_k is the feedthrough of the order-k
/// lossless system realized by the lower-right (m+k) block of
/// G_k ... G_1 R_0 D_1^T ... D_k^T.
inline std::vector<Vector> interpolation_residuals(
    const SchurParams& params, std::span<const Vector> dirs) {
  params.validate();
  const int m = params.m;
  const int n = params.n;
  if (static_cast<int>(dirs.size()) != n) {
    throw DimensionError("interpolation_residuals: expected n directions");
  }
  Matrix h = Matrix::Identity(m + n, m + n);
  h.bottomRightCorner(m, m) = params.D0;
  Matrix p = Matrix::Identity(m + n, m + n);
  std::vector<Vector> out;
  for (int k = 1; k <= n; ++k) {
    h.middleRows(n - k, m + 1) =
        build_V(params.v[k - 1]) * h.middleRows(n - k, m + 1);
    p.middleCols(n - k, m + 1) =
        p.middleCols(n - k, m + 1) * build_U(dirs[k - 1]).transpose();
    const Matrix rk = h * p;
    const Matrix dk = rk.block(n - k, n - k, m, m);
    out.push_back(dk * dirs[k - 1] - params.v[k - 1]);
  }
  return out;
}

inline std::vector<Vector> interpolation_residuals(
    const SchurParams& params, std::span<const int> u_idx) {
  const std::vector<Vector> dirs = directions_from_indices(u_idx, params.m);
  return interpolation_residuals(params, std::span<const Vector>(dirs));
}

/// Inverts build_R for standard-basis directions: un-permute, check the
/// positive m-upper Hessenberg shape, then peel off G_n, ..., G_1 reading
/// each v_k from the leading column of the remaining product.
inline SchurParams recover_params(const RealizationMatrix& r,
                                  std::span<const int> u_idx,
                                  double tol = kPivotTol) {
  const int m = r.m();
  const int n = r.n();
  if (static_cast<int>(u_idx.size()) != n) {
    throw DimensionError("recover_params: expected n direction indices");
  }
  if (orthogonality_residual(r.matrix()) > tol) {
    throw DomainError("recover_params: realization matrix is not orthogonal");
  }
  Matrix h = r.matrix() * direction_factor(u_idx, m).transpose();
  const auto [row, col] = first_hessenberg_violation(h, m, tol);
  if (row != 0) {
    throw ChartMismatch(
        "recover_params: un-permuted matrix is not positive m-upper "
        "Hessenberg at (" +
            std::to_string(row) + "," + std::to_string(col) + ")",
        row, col, h(row - 1, col - 1));
  }
  SchurParams out{m, n, std::vector<Vector>(n), Matrix()};
  for (int k = n; k >= 1; --k) {
    const int c = n - k;
    Vector v = h.block(c, c, m, 1);
    if (!(v.norm() < 1.0 - kNormMargin)) {
      throw ChartMismatch("recover_params: recovered ||v_" +
                              std::to_string(k) + "|| is not < 1",
                          c + 1, c + 1, v.norm());
    }
    h.middleRows(c, m + 1) = build_V(v).transpose() * h.middleRows(c, m + 1);
    out.v[k - 1] = std::move(v);
  }
  out.D0 = h.bottomRightCorner(m, m);
  Matrix expected = Matrix::Identity(m + n, m + n);
  expected.bottomRightCorner(m, m) = out.D0;
  if (max_abs(h - expected) > tol) {
    throw ChartMismatch("recover_params: residual factor is not diag(I, D0)");
  }
  return out;
}

/// G(z) = D + C (zI - A)^{-1} B.
inline ComplexMatrix transfer_eval(const StateSpace& ss,
                                   std::complex<double> z) {
  ss.validate();
  if (!ss.has_output()) throw DimensionError("transfer_eval: needs C and D");
  const int n = ss.n();
  ComplexMatrix lhs = z * ComplexMatrix::Identity(n, n) -
                      ss.A.cast<std::complex<double>>();
  Eigen::FullPivLU<ComplexMatrix> lu(lhs);
  if (!lu.isInvertible()) {
    throw DomainError("transfer_eval: z is an eigenvalue of A");
  }
  return ss.D.cast<std::complex<double>>() +
         ss.C.cast<std::complex<double>>() *
             lu.solve(ss.B.cast<std::complex<double>>());
}

}  // namespace lossless::schur
