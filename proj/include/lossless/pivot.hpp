#pragma once

// Pivot vectors and pivot structures on n x r matrices, with the
// row-oriented (J) and column-oriented (Q) descriptions of the same set of
// pivot locations. All public indices are 1-based; 0 means "no pivot".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lossless/errors.hpp"
#include "lossless/matrix.hpp"

namespace lossless::pivot {

namespace detail {

inline std::string seq_to_string(std::span<const int> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// Entries must lie in [0, bound] and the nonzero ones must be distinct.
inline void check_partial_injection(std::span<const int> s, int bound,
                                    const char* who) {
  std::vector<char> seen(static_cast<std::size_t>(bound) + 1, 0);
  for (int v : s) {
    if (v < 0 || v > bound) {
      throw InvalidStructure(std::string(who) + ": entry " +
                             std::to_string(v) + " outside {0,..," +
                             std::to_string(bound) + "} in " +
                             seq_to_string(s));
    }
    if (v == 0) continue;
    if (seen[v]) {
      throw InvalidStructure(std::string(who) + ": duplicate pivot " +
                             std::to_string(v) + " in " + seq_to_string(s));
    }
    seen[v] = 1;
  }
}

}  // namespace detail

/// Row-oriented pivot structure J = {j_1,..,j_n} for an n x r matrix:
/// row k has its pivot in column j_k (0 = none).
class PivotStructure {
 public:
  PivotStructure(int rows, int cols, std::vector<int> j)
      : rows_(rows), cols_(cols), j_(std::move(j)) {
    if (rows_ < 1 || cols_ < 1) {
      throw ArgumentError("PivotStructure: dimensions must be positive");
    }
    if (static_cast<int>(j_.size()) != rows_) {
      throw ArgumentError("PivotStructure: expected " + std::to_string(rows_) +
                          " entries, got " + std::to_string(j_.size()));
    }
    detail::check_partial_injection(j_, cols_, "PivotStructure");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<int>& values() const { return j_; }

  /// j_k for 1 <= k <= rows().
  int operator()(int k) const {
    if (k < 1 || k > rows_) throw ArgumentError("PivotStructure: row index");
    return j_[k - 1];
  }

  bool is_full() const {
    return std::none_of(j_.begin(), j_.end(), [](int v) { return v == 0; });
  }

  /// Number of rows carrying a pivot.
  int pivot_count() const {
    return static_cast<int>(
        std::count_if(j_.begin(), j_.end(), [](int v) { return v != 0; }));
  }

  friend bool operator==(const PivotStructure&, const PivotStructure&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<int> j_;
};

/// Column-oriented pivot structure Q = {q_1,..,q_r}: column l holds the
/// pivot of row q_l (0 = none).
class ColumnPivotStructure {
 public:
  ColumnPivotStructure(int rows, int cols, std::vector<int> q)
      : rows_(rows), cols_(cols), q_(std::move(q)) {
    if (rows_ < 1 || cols_ < 1) {
      throw ArgumentError("ColumnPivotStructure: dimensions must be positive");
    }
    if (static_cast<int>(q_.size()) != cols_) {
      throw ArgumentError("ColumnPivotStructure: expected " +
                          std::to_string(cols_) + " entries, got " +
                          std::to_string(q_.size()));
    }
    detail::check_partial_injection(q_, rows_, "ColumnPivotStructure");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<int>& values() const { return q_; }

  int operator()(int l) const {
    if (l < 1 || l > cols_) {
      throw ArgumentError("ColumnPivotStructure: column index");
    }
    return q_[l - 1];
  }

  friend bool operator==(const ColumnPivotStructure&,
                         const ColumnPivotStructure&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<int> q_;
};

/// Successor function S on {0,..,n}: a pivot-k vector v gives a pivot-S(k)
/// vector Av. S(0) = 0. The predecessor P is the extended inverse.
class SuccessorFunction {
 public:
  explicit SuccessorFunction(std::vector<int> s) : s_(std::move(s)) {
    if (s_.empty()) throw ArgumentError("SuccessorFunction: empty");
    detail::check_partial_injection(s_, size(), "SuccessorFunction");
  }

  int size() const { return static_cast<int>(s_.size()); }
  const std::vector<int>& values() const { return s_; }

  int operator()(int k) const {
    if (k < 0 || k > size()) throw ArgumentError("SuccessorFunction: index");
    return k == 0 ? 0 : s_[k - 1];
  }

  /// P(l): the k with S(k) = l, or 0 if l is not in the range of S.
  int predecessor(int l) const {
    if (l < 0 || l > size()) throw ArgumentError("SuccessorFunction: index");
    if (l == 0) return 0;
    auto it = std::find(s_.begin(), s_.end(), l);
    return it == s_.end() ? 0 : static_cast<int>(it - s_.begin()) + 1;
  }

  /// True when S restricted to its nonzero domain is strictly increasing.
  bool is_monotone() const {
    int last = 0;
    for (int v : s_) {
      if (v == 0) continue;
      if (v <= last) return false;
      last = v;
    }
    return true;
  }

  friend bool operator==(const SuccessorFunction&,
                         const SuccessorFunction&) = default;

 private:
  std::vector<int> s_;
};

/// v(k) > tol and |v(j)| <= tol for all j > k (k is 1-based).
inline bool is_pivot_vector(const Eigen::Ref<const Vector>& v, int k,
                            double tol = kPivotTol) {
  if (k < 1 || k > v.size()) {
    throw ArgumentError("is_pivot_vector: position " + std::to_string(k) +
                        " outside 1.." + std::to_string(v.size()));
  }
  if (!(v(k - 1) > tol)) return false;
  for (Eigen::Index j = k; j < v.size(); ++j) {
    if (std::abs(v(j)) > tol) return false;
  }
  return true;
}

/// Pivot-k vector whose entries above the pivot are positive as well.
inline bool is_positive_pivot_vector(const Eigen::Ref<const Vector>& v, int k,
                                     double tol = kPivotTol) {
  if (!is_pivot_vector(v, k, tol)) return false;
  for (int j = 0; j < k - 1; ++j) {
    if (!(v(j) > tol)) return false;
  }
  return true;
}

/// Pivot position of v: the index of its last entry above tol in magnitude
/// when that entry is positive, else 0.
inline int pivot_position(const Eigen::Ref<const Vector>& v,
                          double tol = kPivotTol) {
  for (Eigen::Index j = v.size() - 1; j >= 0; --j) {
    if (std::abs(v(j)) > tol) return v(j) > tol ? static_cast<int>(j) + 1 : 0;
  }
  return 0;
}

/// T_{n,r}: J -> Q.
inline ColumnPivotStructure row_to_column(const PivotStructure& j) {
  std::vector<int> q(static_cast<std::size_t>(j.cols()), 0);
  for (int k = 1; k <= j.rows(); ++k) {
    if (j(k) != 0) q[j(k) - 1] = k;
  }
  return {j.rows(), j.cols(), std::move(q)};
}

/// T_{r,n}: Q -> J, the inverse of row_to_column.
inline PivotStructure column_to_row(const ColumnPivotStructure& q) {
  std::vector<int> j(static_cast<std::size_t>(q.rows()), 0);
  for (int l = 1; l <= q.cols(); ++l) {
    if (q(l) != 0) j[q(l) - 1] = l;
  }
  return {q.rows(), q.cols(), std::move(j)};
}

/// Column j_k of M is a pivot-k vector for every row k that has a pivot.
inline bool matrix_has_pivot_structure(const Eigen::Ref<const Matrix>& m,
                                       const PivotStructure& j,
                                       double tol = kPivotTol) {
  if (m.rows() != j.rows() || m.cols() != j.cols()) {
    throw DimensionError("matrix_has_pivot_structure: matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", structure is " +
                         std::to_string(j.rows()) + "x" +
                         std::to_string(j.cols()));
  }
  for (int k = 1; k <= j.rows(); ++k) {
    if (j(k) == 0) continue;
    if (!is_pivot_vector(m.col(j(k) - 1), k, tol)) return false;
  }
  return true;
}

/// Some full pivot structure of M, taking the leftmost pivot-k column for
/// each k; nullopt when some row has no pivot column at all.
inline std::optional<PivotStructure> find_full_pivot_structure(
    const Eigen::Ref<const Matrix>& m, double tol = kPivotTol) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> j(static_cast<std::size_t>(n), 0);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const int k = pivot_position(m.col(c), tol);
    if (k != 0 && j[k - 1] == 0) j[k - 1] = static_cast<int>(c) + 1;
  }
  if (std::find(j.begin(), j.end(), 0) != j.end()) return std::nullopt;
  return PivotStructure(n, static_cast<int>(m.cols()), std::move(j));
}

/// The structure P on A induced by J on [B,A]: p_k = max(j_k - m, 0).
inline PivotStructure induced_structure_on_A(const PivotStructure& j, int m) {
  if (m < 1) throw ArgumentError("induced_structure_on_A: m must be >= 1");
  if (j.cols() != m + j.rows()) {
    throw DimensionError("induced_structure_on_A: structure has " +
                         std::to_string(j.cols()) + " columns, expected m+n=" +
                         std::to_string(m + j.rows()));
  }
  std::vector<int> p(j.values());
  for (int& v : p) v = std::max(v - m, 0);
  return {j.rows(), j.rows(), std::move(p)};
}

/// F+ strictly increasing with range exactly {1,..,p}, p = number of pivots.
inline bool is_staircase(const PivotStructure& f) {
  int expected = 1;
  for (int v : f.values()) {
    if (v == 0) continue;
    if (v != expected) return false;
    ++expected;
  }
  return true;
}

/// J is full, B carries the pivot-1 column (1 <= j_1 <= m), and the induced
/// structure on A is a staircase.
inline bool is_admissible(const PivotStructure& j, int m) {
  if (!j.is_full()) {
    throw InvalidStructure("is_admissible: structure " +
                           detail::seq_to_string(j.values()) + " is not full");
  }
  const PivotStructure p = induced_structure_on_A(j, m);
  return j(1) >= 1 && j(1) <= m && is_staircase(p);
}

/// S with s_k = q_{m+k}.
inline SuccessorFunction successor_from(const PivotStructure& j, int m) {
  if (!is_admissible(j, m)) {
    throw InvalidStructure("successor_from: " +
                           detail::seq_to_string(j.values()) +
                           " is not admissible for m=" + std::to_string(m));
  }
  const ColumnPivotStructure q = row_to_column(j);
  return SuccessorFunction(
      std::vector<int>(q.values().begin() + m, q.values().end()));
}

/// Validates a column pivot sequence (q_1..q_m) for B: distinct nonzero
/// entries in {0..n} including the value 1.
inline void check_b_pivots(std::span<const int> q, int n) {
  detail::check_partial_injection(q, n, "B pivot sequence");
  if (std::find(q.begin(), q.end(), 1) == q.end()) {
    throw InvalidStructure("B pivot sequence " + detail::seq_to_string(q) +
                           " has no pivot-1 column; not admissible");
  }
}

/// The admissible J determined by the pivots (q_1..q_m) of B: A's columns
/// carry the remaining pivot rows in increasing order.
inline PivotStructure admissible_from_b_pivots(std::span<const int> q, int n) {
  check_b_pivots(q, n);
  const int m = static_cast<int>(q.size());
  std::vector<int> full(q.begin(), q.end());
  full.resize(static_cast<std::size_t>(m + n), 0);
  int next = m;
  for (int k = 1; k <= n; ++k) {
    if (std::find(q.begin(), q.end(), k) == q.end()) full[next++] = k;
  }
  return column_to_row(ColumnPivotStructure(n, m + n, std::move(full)));
}

/// Witness matrix for J: column j_k is e_k, every other column is zero.
inline Matrix witness_matrix(const PivotStructure& j) {
  Matrix m = Matrix::Zero(j.rows(), j.cols());
  for (int k = 1; k <= j.rows(); ++k) {
    if (j(k) != 0) m(k - 1, j(k) - 1) = 1.0;
  }
  return m;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

/// Number of admissible full pivot structures for n x (m+n) matrices:
/// sum over l = 1..min(m,n) of l! C(m,l) C(n-1,l-1).
inline std::uint64_t count_admissible(int m, int n) {
  if (m < 1 || n < 1) throw ArgumentError("count_admissible: m,n must be >= 1");
  std::uint64_t total = 0;
  std::uint64_t fact = 1;
  for (int l = 1; l <= std::min(m, n); ++l) {
    fact *= static_cast<std::uint64_t>(l);
    total += fact * binomial(m, l) * binomial(n - 1, l - 1);
  }
  return total;
}

}  // namespace lossless::pivot
