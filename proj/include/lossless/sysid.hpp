#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lossless/errors.hpp"
#include "lossless/matrix.hpp"
#include "lossless/pivot.hpp"
#include "lossless/state_space.hpp"
#include "lossless/young.hpp"

namespace lossless::sysid {

/// Default relative singular-value threshold for rank decisions.
inline constexpr double kRankTol = 1e-8;
/// Spectral radius must be below 1 - kStabilityMargin.
inline constexpr double kStabilityMargin = 1e-10;
/// Largest n solved directly by the vectorized Stein equation.
inline constexpr int kDirectSteinLimit = 32;
inline constexpr double kSteinIterTol = 1e-12;
inline constexpr int kSteinMaxIter = 10000;
/// Row-orthonormality required of [B,A] before canonicalization.
inline constexpr double kInputNormalTol = 1e-8;

/// [B, AB, ..., A^{depth-1} B].
inline Matrix controllability_matrix(const Eigen::Ref<const Matrix>& a,
                                     const Eigen::Ref<const Matrix>& b,
                                     int depth = -1) {
  require_square(a, "controllability_matrix");
  if (b.rows() != a.rows()) {
    throw DimensionError("controllability_matrix: B must have n rows");
  }
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  if (depth < 0) depth = static_cast<int>(n);
  if (depth < 1) throw ArgumentError("controllability_matrix: depth < 1");
  Matrix k(n, depth * m);
  Matrix blk = b;
  for (int j = 0; j < depth; ++j) {
    k.middleCols(j * m, m) = blk;
    if (j + 1 < depth) blk = a * blk;
  }
  return k;
}

/// [C; CA; ...; C A^{depth-1}].
inline Matrix observability_matrix(const Eigen::Ref<const Matrix>& c,
                                   const Eigen::Ref<const Matrix>& a,
                                   int depth = -1) {
  require_square(a, "observability_matrix");
  if (c.cols() != a.rows()) {
    throw DimensionError("observability_matrix: C must have n columns");
  }
  return controllability_matrix(a.transpose(), c.transpose(), depth)
      .transpose();
}

/// Number of singular values above tol * sigma_max.
inline int numerical_rank(const Eigen::Ref<const Matrix>& m,
                          double tol = kRankTol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > tol * s(0) ? 1 : 0;
  return r;
}

/// sigma_max / sigma_min of a square matrix (infinity when singular).
inline double condition_number(const Eigen::Ref<const Matrix>& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  const double lo = s(s.size() - 1);
  return lo > 0.0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

struct Gramian {
  Matrix W;

  bool is_symmetric(double tol = 1e-12) const {
    return max_abs(W - W.transpose()) <= tol;
  }

  bool is_psd(double tol = 1e-10) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(W, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
  }
};

inline bool is_stable(const Eigen::Ref<const Matrix>& a) {
  return spectral_radius(a) < 1.0 - kStabilityMargin;
}

/// W with W - A W A^T = M.
inline Gramian solve_stein(const Eigen::Ref<const Matrix>& a,
                           const Eigen::Ref<const Matrix>& m) {
  require_square(a, "solve_stein");
  require_square(m, "solve_stein");
  if (m.rows() != a.rows()) throw DimensionError("solve_stein: size mismatch");
  const Eigen::Index n = a.rows();
  if (n == 0) return {Matrix(0, 0)};
  if (!is_stable(a)) {
    throw DomainError("solve_stein: A is not asymptotically stable "
                      "(spectral radius " +
                      std::to_string(spectral_radius(a)) + ")");
  }
  Matrix w;
  if (n <= kDirectSteinLimit) {
    // Column-major vec: vec(A W A^T) = (A kron A) vec(W).
    const Eigen::Index nn = n * n;
    Matrix op = Matrix::Identity(nn, nn);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        op.block(i * n, j * n, n, n) -= a(i, j) * a;
      }
    }
    const Vector rhs = Eigen::Map<const Vector>(Matrix(m).data(), nn);
    const Vector x = op.partialPivLu().solve(rhs);
    w = Eigen::Map<const Matrix>(x.data(), n, n);
  } else {
    w = m;
    int it = 0;
    for (; it < kSteinMaxIter; ++it) {
      w = a * w * a.transpose() + m;
      if (max_abs(w - a * w * a.transpose() - m) < kSteinIterTol) break;
    }
    if (it == kSteinMaxIter) {
      throw DomainError("solve_stein: fixed-point iteration did not converge "
                        "in " +
                        std::to_string(kSteinMaxIter) + " steps");
    }
  }
  w = 0.5 * (w + w.transpose());
  return {std::move(w)};
}

inline Gramian controllability_gramian(const Eigen::Ref<const Matrix>& a,
                                       const Eigen::Ref<const Matrix>& b) {
  if (b.rows() != a.rows()) throw DimensionError("B must have n rows");
  return solve_stein(a, b * b.transpose());
}

inline Gramian observability_gramian(const Eigen::Ref<const Matrix>& c,
                                     const Eigen::Ref<const Matrix>& a) {
  if (c.cols() != a.rows()) throw DimensionError("C must have n columns");
  return solve_stein(a.transpose(), c.transpose() * c);
}

inline bool is_controllable(const Eigen::Ref<const Matrix>& a,
                            const Eigen::Ref<const Matrix>& b,
                            double tol = kRankTol) {
  return numerical_rank(controllability_matrix(a, b), tol) == a.rows();
}

struct NormalizedPair {
  Matrix T;
  Matrix A;
  Matrix B;
};

/// Input-normal form: with W_c = M^T M, M upper triangular with positive
/// diagonal, T = M^{-T} gives T W_c T^T = I.
inline NormalizedPair input_normalize(const Eigen::Ref<const Matrix>& a,
                                      const Eigen::Ref<const Matrix>& b,
                                      double tol = kRankTol) {
  const Gramian wc = controllability_gramian(a, b);
  const Eigen::Index n = a.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(wc.W, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  if (!(ev(0) > tol * ev(n - 1))) {
    throw RankError("input_normalize: controllability Gramian is singular "
                    "(pair is not controllable)");
  }
  Eigen::LLT<Matrix> llt(wc.W);
  if (llt.info() != Eigen::Success) {
    throw RankError("input_normalize: Cholesky factorization failed");
  }
  // W_c = L L^T, so M = L^T and T = M^{-T} = L^{-1}.
  const Matrix l = llt.matrixL();
  Matrix t = l.triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
  Matrix an = t * a * l;
  Matrix bn = t * b;
  return {std::move(t), std::move(an), std::move(bn)};
}

/// The n columns of K = [B, AB, ..., A^{n-1}B] selected by the chart's J~.
inline Matrix selected_columns(const Eigen::Ref<const Matrix>& b,
                               const Eigen::Ref<const Matrix>& a,
                               const young::Chart& chart) {
  if (b.rows() != chart.n || b.cols() != chart.m || a.rows() != chart.n ||
      a.cols() != chart.n) {
    throw DimensionError("selected_columns: system is not " +
                         std::to_string(chart.n) + " states, " +
                         std::to_string(chart.m) + " inputs");
  }
  const Matrix k = controllability_matrix(a, b);
  Matrix x(chart.n, chart.n);
  for (int i = 1; i <= chart.n; ++i) x.col(i - 1) = k.col(chart.Jtilde(i) - 1);
  return x;
}

struct Canonical {
  Matrix Q;
  Matrix B;
  Matrix A;
  double condition = 0.0;
};

/// Q orthogonal with Q X = R upper triangular, positive diagonal, where X is
/// the chart's column selection of K. Then QK has the nice structure J~ and
/// [QB, QAQ^T] the admissible structure J.
inline Canonical orthogonal_canonicalize(const Eigen::Ref<const Matrix>& b,
                                         const Eigen::Ref<const Matrix>& a,
                                         const young::Chart& chart,
                                         double tol = kRankTol) {
  const Matrix x = selected_columns(b, a, chart);
  Matrix ba(chart.n, chart.m + chart.n);
  ba << b, a;
  if (row_orthonormality_residual(ba) > kInputNormalTol) {
    throw DomainError("orthogonal_canonicalize: [B,A] is not row-orthonormal");
  }
  const double cond = condition_number(x);
  if (!(cond * tol < 1.0)) {
    throw ChartMismatch("orthogonal_canonicalize: selected columns of K are "
                        "numerically dependent (condition " +
                        std::to_string(cond) + ")");
  }
  Eigen::HouseholderQR<Matrix> qr(x);
  Matrix qf = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int i = 0; i < chart.n; ++i) {
    if (r(i, i) == 0.0) {
      throw ChartMismatch("orthogonal_canonicalize: zero diagonal in R", i + 1,
                          i + 1, 0.0);
    }
    if (r(i, i) < 0.0) qf.col(i) = -qf.col(i);
  }
  Matrix q = qf.transpose();
  Matrix bq = q * b;
  Matrix aq = q * a * q.transpose();
  return {std::move(q), std::move(bq), std::move(aq), cond};
}

struct ChartFit {
  std::size_t index;  // position in the atlas
  const young::Chart* chart;
  double condition;
};

/// Atlas charts whose selected K-columns are independent.
inline std::vector<ChartFit> find_charts(const Eigen::Ref<const Matrix>& b,
                                         const Eigen::Ref<const Matrix>& a,
                                         const std::vector<young::Chart>& atlas,
                                         double tol = kRankTol) {
  if (!is_controllable(a, b, tol)) {
    throw RankError("find_charts: pair (A,B) is not controllable");
  }
  std::vector<ChartFit> out;
  for (std::size_t i = 0; i < atlas.size(); ++i) {
    const double cond = condition_number(selected_columns(b, a, atlas[i]));
    if (cond * tol < 1.0) out.push_back({i, &atlas[i], cond});
  }
  return out;
}

/// Keeps the first r states.
inline StateSpace truncate(const StateSpace& ss, int r) {
  ss.validate();
  if (r < 1 || r > ss.n()) {
    throw ArgumentError("truncate: order " + std::to_string(r) +
                        " outside 1.." + std::to_string(ss.n()));
  }
  StateSpace out;
  out.A = ss.A.topLeftCorner(r, r);
  out.B = ss.B.topRows(r);
  if (ss.has_output()) {
    out.C = ss.C.leftCols(r);
    out.D = ss.D;
  } else {
    out.C = Matrix(0, r);
    out.D = Matrix(0, ss.m());
  }
  return out;
}

}  // namespace lossless::sysid
