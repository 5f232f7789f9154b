#pragma once

// Numbered Young diagrams: the m x n array Y whose entry y(i,j) is the pivot
// row of column i of the block A^{j-1}B in the controllability matrix K.
// Admissible diagrams are in bijection with admissible pivot structures on
// [B,A]; this header holds the three constructions of Y from the pivots of
// B, the nice-selection view (dynamical indices) and atlas enumeration.

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lossless/errors.hpp"
#include "lossless/pivot.hpp"

namespace lossless::young {

/// An m x n array in which each of 1..n occurs exactly once and every other
/// entry is 0.
class NumberedYoungDiagram {
 public:
  /// `entries` is row-major, m*n values.
  NumberedYoungDiagram(int m, int n, std::vector<int> entries)
      : m_(m), n_(n), y_(std::move(entries)) {
    if (m_ < 1 || n_ < 1) {
      throw ArgumentError("NumberedYoungDiagram: m,n must be >= 1");
    }
    if (static_cast<int>(y_.size()) != m_ * n_) {
      throw ArgumentError("NumberedYoungDiagram: expected " +
                          std::to_string(m_ * n_) + " entries");
    }
    std::vector<int> count(static_cast<std::size_t>(n_) + 1, 0);
    for (int v : y_) {
      if (v < 0 || v > n_) {
        throw InvalidStructure("NumberedYoungDiagram: entry " +
                               std::to_string(v) + " outside {0,..," +
                               std::to_string(n_) + "}");
      }
      ++count[v];
    }
    for (int k = 1; k <= n_; ++k) {
      if (count[k] != 1) {
        throw InvalidStructure("NumberedYoungDiagram: value " +
                               std::to_string(k) + " occurs " +
                               std::to_string(count[k]) + " times");
      }
    }
  }

  /// Rows may be shorter than n; missing entries are zero.
  static NumberedYoungDiagram from_rows(
      int m, int n, const std::vector<std::vector<int>>& rows) {
    if (static_cast<int>(rows.size()) != m) {
      throw ArgumentError("NumberedYoungDiagram: expected " +
                          std::to_string(m) + " rows");
    }
    std::vector<int> e(static_cast<std::size_t>(m * n), 0);
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(rows[i].size()) > n) {
        throw ArgumentError("NumberedYoungDiagram: row longer than n");
      }
      std::copy(rows[i].begin(), rows[i].end(), e.begin() + i * n);
    }
    return {m, n, std::move(e)};
  }

  int m() const { return m_; }
  int n() const { return n_; }

  /// y(i,j), 1-based.
  int operator()(int i, int j) const {
    if (i < 1 || i > m_ || j < 1 || j > n_) {
      throw ArgumentError("NumberedYoungDiagram: index out of range");
    }
    return y_[(i - 1) * n_ + (j - 1)];
  }

  const std::vector<int>& entries() const { return y_; }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> r(m_);
    for (int i = 0; i < m_; ++i) {
      r[i].assign(y_.begin() + i * n_, y_.begin() + (i + 1) * n_);
    }
    return r;
  }

  /// First column: the column pivot sequence (q_1..q_m) of B.
  std::vector<int> first_column() const {
    std::vector<int> q(m_);
    for (int i = 0; i < m_; ++i) q[i] = y_[i * n_];
    return q;
  }

  /// (i, j) with y(i,j) = k, 1-based.
  std::pair<int, int> locate(int k) const {
    auto it = std::find(y_.begin(), y_.end(), k);
    if (k < 1 || it == y_.end()) {
      throw ArgumentError("NumberedYoungDiagram: value not present");
    }
    const int idx = static_cast<int>(it - y_.begin());
    return {idx / n_ + 1, idx % n_ + 1};
  }

  bool is_left_aligned() const {
    for (int i = 0; i < m_; ++i) {
      for (int j = 1; j < n_; ++j) {
        if (y_[i * n_ + j] > 0 && y_[i * n_ + j - 1] == 0) return false;
      }
    }
    return true;
  }

  friend bool operator==(const NumberedYoungDiagram&,
                         const NumberedYoungDiagram&) = default;

 private:
  int m_;
  int n_;
  std::vector<int> y_;
};

/// d = (d_1..d_m) with nonnegative entries summing to n.
class DynamicalIndices {
 public:
  DynamicalIndices(int n, std::vector<int> d) : n_(n), d_(std::move(d)) {
    if (d_.empty() || n_ < 1) {
      throw ArgumentError("DynamicalIndices: m,n must be >= 1");
    }
    if (std::any_of(d_.begin(), d_.end(), [](int v) { return v < 0; }) ||
        std::accumulate(d_.begin(), d_.end(), 0) != n_) {
      throw InvalidStructure("DynamicalIndices: entries must be >= 0 and sum "
                             "to n=" + std::to_string(n_));
    }
  }

  int m() const { return static_cast<int>(d_.size()); }
  int n() const { return n_; }
  const std::vector<int>& values() const { return d_; }
  int operator()(int i) const { return d_.at(i - 1); }

  /// Number of nonzero indices (= number of pivots in B).
  int nonzero_count() const {
    return static_cast<int>(
        std::count_if(d_.begin(), d_.end(), [](int v) { return v > 0; }));
  }

  friend bool operator==(const DynamicalIndices&,
                         const DynamicalIndices&) = default;

 private:
  int n_;
  std::vector<int> d_;
};

/// A chart of the atlas: one admissible diagram and the objects it
/// determines. All representations are computed once and cross-checked.
struct Chart {
  int m = 0;
  int n = 0;
  DynamicalIndices d;
  NumberedYoungDiagram diagram;
  pivot::PivotStructure J;       // admissible structure on [B,A], n x (m+n)
  pivot::PivotStructure Jtilde;  // nice structure on K, n x nm
  std::vector<int> u_idx;        // direction vectors u_k = e_{u_idx[k-1]}
};

/// Membership test for the admissible subset of Y(m,n).
inline bool is_admissible_diagram(const NumberedYoungDiagram& y) {
  const int m = y.m();
  const int n = y.n();
  // (i) left alignment
  if (!y.is_left_aligned()) return false;
  // (ii) the p_B largest values end the p_B nonzero rows
  int p_b = 0;
  for (int i = 1; i <= m; ++i) {
    if (y(i, 1) == 0) continue;
    ++p_b;
  }
  for (int i = 1; i <= m; ++i) {
    if (y(i, 1) == 0) continue;
    int last = 0;
    for (int j = 1; j <= n && y(i, j) > 0; ++j) last = y(i, j);
    if (last < n - p_b + 1) return false;
  }
  // (iii) order of successors implies order of predecessors
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j < n; ++j) {
      const int a = y(i, j + 1);
      if (a == 0) continue;
      for (int i2 = 1; i2 <= m; ++i2) {
        for (int j2 = 1; j2 < n; ++j2) {
          const int b = y(i2, j2 + 1);
          if (b == 0 || !(a > b)) continue;
          if (!(y(i, j) > y(i2, j2) && y(i2, j2) > 0)) return false;
        }
      }
    }
  }
  return true;
}

namespace detail {

inline void require_admissible(const NumberedYoungDiagram& y,
                               const char* who) {
  if (!is_admissible_diagram(y)) {
    throw InvalidStructure(std::string(who) +
                           ": diagram is not an admissible numbered Young "
                           "diagram");
  }
}

}  // namespace detail

/// Row following on an admissible J: y(i,1) = q_i, y(i,j+1) = S(y(i,j)).
inline NumberedYoungDiagram diagram_from_admissible(
    const pivot::PivotStructure& j, int m) {
  const pivot::SuccessorFunction s = pivot::successor_from(j, m);
  const pivot::ColumnPivotStructure q = pivot::row_to_column(j);
  const int n = j.rows();
  std::vector<int> e(static_cast<std::size_t>(m * n), 0);
  for (int i = 0; i < m; ++i) {
    e[i * n] = q.values()[i];
    for (int c = 1; c < n; ++c) e[i * n + c] = s(e[i * n + c - 1]);
  }
  return {m, n, std::move(e)};
}

/// Grows Y from its first column without building S. Each value
/// k not yet placed goes right of the smallest placed value whose right
/// neighbour is still free.
inline NumberedYoungDiagram diagram_procedure2(std::span<const int> q, int m,
                                               int n) {
  if (static_cast<int>(q.size()) != m) {
    throw ArgumentError("diagram_procedure2: q must have m entries");
  }
  pivot::check_b_pivots(q, n);
  std::vector<int> e(static_cast<std::size_t>(m * n), 0);
  std::vector<char> assigned(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < m; ++i) {
    e[i * n] = q[i];
    assigned[q[i]] = 1;
  }
  assigned[0] = 0;
  for (int k = 1; k <= n; ++k) {
    if (assigned[k]) continue;
    int best = -1;
    for (int i = 0; i < m; ++i) {
      for (int c = 0; c + 1 < n; ++c) {
        const int v = e[i * n + c];
        if (v == 0 || e[i * n + c + 1] != 0) continue;
        if (best < 0 || v < e[best]) best = i * n + c;
      }
    }
    if (best < 0) {
      throw std::logic_error("diagram_procedure2: no free slot for value " +
                             std::to_string(k));
    }
    e[best + 1] = k;
    assigned[k] = 1;
  }
  return {m, n, std::move(e)};
}

/// Output of the eta recursion. `eta[k]` is the vector eta_k (k = 0..n), `xi[k]`
/// the candidate value computed at step k (0 when the step had no entry 1),
/// `mu[k-1]` = mu(k), the position of the entry 1 in eta_k.
struct Procedure3Result {
  NumberedYoungDiagram diagram;
  std::vector<std::vector<int>> eta;
  std::vector<int> xi;
  std::vector<int> mu;
};

/// Backward recursion eta_n = q, ..., eta_0 = 0.
inline Procedure3Result diagram_procedure3(std::span<const int> q, int m,
                                           int n) {
  if (static_cast<int>(q.size()) != m) {
    throw ArgumentError("diagram_procedure3: q must have m entries");
  }
  pivot::check_b_pivots(q, n);
  std::vector<std::vector<int>> eta(static_cast<std::size_t>(n) + 1,
                                    std::vector<int>(m, 0));
  std::vector<int> xi(static_cast<std::size_t>(n) + 1, 0);
  eta[n].assign(q.begin(), q.end());
  for (int k = n - 1; k >= 0; --k) {
    const auto& next = eta[k + 1];
    auto& cur = eta[k];
    int one_at = -1;
    for (int i = 0; i < m; ++i) {
      if (next[i] == 0) {
        cur[i] = 0;
      } else if (next[i] > 1) {
        cur[i] = next[i] - 1;
      } else {
        one_at = i;
      }
    }
    if (one_at >= 0) {
      int candidate = 1;
      while (std::find(cur.begin(), cur.end(), candidate) != cur.end()) {
        ++candidate;
      }
      xi[k] = candidate;
      cur[one_at] = candidate <= k ? candidate : 0;
    }
  }
  std::vector<int> mu(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= n; ++k) {
    const auto& v = eta[k];
    if (std::count(v.begin(), v.end(), 1) != 1) {
      throw std::logic_error("diagram_procedure3: eta_" + std::to_string(k) +
                             " does not contain exactly one entry 1");
    }
    mu[k - 1] = static_cast<int>(std::find(v.begin(), v.end(), 1) - v.begin()) + 1;
  }
  // y(i,.) lists, in increasing order, the k with (eta_{n+1-k})_i = 1.
  std::vector<int> e(static_cast<std::size_t>(m * n), 0);
  std::vector<int> fill(m, 0);
  for (int k = 1; k <= n; ++k) {
    const int i = mu[n - k] - 1;
    e[i * n + fill[i]++] = k;
  }
  return {NumberedYoungDiagram(m, n, std::move(e)), std::move(eta),
          std::move(xi), std::move(mu)};
}

/// J~ with J~(k) = (j-1)m + i where y(i,j) = k: the nice pivot structure on
/// K = [B, AB, ..., A^{n-1}B].
inline pivot::PivotStructure induced_full_structure(
    const NumberedYoungDiagram& y) {
  detail::require_admissible(y, "induced_full_structure");
  const int m = y.m();
  const int n = y.n();
  std::vector<int> qt(static_cast<std::size_t>(n * m), 0);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) qt[(j - 1) * m + (i - 1)] = y(i, j);
  }
  return pivot::column_to_row(pivot::ColumnPivotStructure(n, n * m, qt));
}

/// The admissible J inducing Y. S is read directly off the rows of Y
/// (S(y(i,j)) = y(i,j+1), last entries map to 0).
inline pivot::PivotStructure admissible_from_diagram(
    const NumberedYoungDiagram& y) {
  detail::require_admissible(y, "admissible_from_diagram");
  const int m = y.m();
  const int n = y.n();
  std::vector<int> q(static_cast<std::size_t>(m + n), 0);
  for (int i = 1; i <= m; ++i) {
    q[i - 1] = y(i, 1);
    for (int j = 1; j <= n; ++j) {
      const int v = y(i, j);
      if (v == 0) break;
      q[m + v - 1] = j < n ? y(i, j + 1) : 0;
    }
  }
  return pivot::column_to_row(pivot::ColumnPivotStructure(n, m + n, q));
}

/// d_i = number of nonzero entries in row i.
inline DynamicalIndices dynamical_indices(const NumberedYoungDiagram& y) {
  if (!y.is_left_aligned()) {
    throw InvalidStructure("dynamical_indices: diagram is not left-aligned");
  }
  std::vector<int> d(y.m(), 0);
  for (int i = 1; i <= y.m(); ++i) {
    for (int j = 1; j <= y.n(); ++j) d[i - 1] += y(i, j) > 0 ? 1 : 0;
  }
  return {y.n(), std::move(d)};
}

/// Y_r: each row's d_i entries shifted n - d_i places to the right.
inline NumberedYoungDiagram right_align(const NumberedYoungDiagram& y) {
  const DynamicalIndices d = dynamical_indices(y);
  const int m = y.m();
  const int n = y.n();
  std::vector<int> e(static_cast<std::size_t>(m * n), 0);
  for (int i = 1; i <= m; ++i) {
    const int shift = n - d(i);
    for (int j = 1; j <= d(i); ++j) e[(i - 1) * n + shift + j - 1] = y(i, j);
  }
  return {m, n, std::move(e)};
}

/// Nonzero entries of vec(Pi Y_r), where `row_order` lists the nonzero rows
/// of Y (1-based) in the order Pi puts them on top.
inline std::vector<int> stacked_sequence(const NumberedYoungDiagram& y,
                                         std::span<const int> row_order) {
  const NumberedYoungDiagram yr = right_align(y);
  std::vector<int> out;
  for (int j = 1; j <= y.n(); ++j) {
    for (int i : row_order) {
      if (yr(i, j) != 0) out.push_back(yr(i, j));
    }
  }
  return out;
}

/// The nonzero rows of d in increasing index order.
inline std::vector<int> nonzero_rows(const DynamicalIndices& d) {
  std::vector<int> rows;
  for (int i = 1; i <= d.m(); ++i) {
    if (d(i) > 0) rows.push_back(i);
  }
  return rows;
}

/// The unique diagram with dynamical indices d for which
/// stacked_sequence(Y, row_order) = (1, ..., n): number the right-aligned
/// cells column by column, visiting rows in `row_order`.
inline NumberedYoungDiagram numbering_for(const DynamicalIndices& d,
                                          std::span<const int> row_order) {
  const int m = d.m();
  const int n = d.n();
  std::vector<int> sorted(row_order.begin(), row_order.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != nonzero_rows(d)) {
    throw ArgumentError("numbering_for: row order must permute the nonzero "
                        "rows of d");
  }
  std::vector<int> e(static_cast<std::size_t>(m * n), 0);
  std::vector<int> fill(m, 0);
  int next = 1;
  for (int col = 1; col <= n; ++col) {
    for (int i : row_order) {
      if (col > n - d(i)) e[(i - 1) * n + fill[i - 1]++] = next++;
    }
  }
  return {m, n, std::move(e)};
}

/// All p_B! admissible numberings of the nice selection d, one per
/// permutation of the nonzero rows, in lexicographic order of the row order.
inline std::vector<NumberedYoungDiagram> numberings_for(
    const DynamicalIndices& d) {
  std::vector<int> order = nonzero_rows(d);
  std::vector<NumberedYoungDiagram> out;
  do {
    out.push_back(numbering_for(d, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

/// Row order with non-increasing dynamical indices, ties kept in index
/// order. Selects the numbering used by the minimal atlas.
inline std::vector<int> minimal_row_order(const DynamicalIndices& d) {
  std::vector<int> order = nonzero_rows(d);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d(a) > d(b); });
  return order;
}

/// D(m,n) in colexicographic order (compare last index first).
inline std::vector<DynamicalIndices> all_dynamical_indices(int m, int n) {
  if (m < 1 || n < 1) {
    throw ArgumentError("all_dynamical_indices: m,n must be >= 1");
  }
  std::vector<std::vector<int>> all;
  std::vector<int> cur(m, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == m - 1) {
      cur[pos] = left;
      all.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, n);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(),
                                        b.rend());
  });
  std::vector<DynamicalIndices> out;
  out.reserve(all.size());
  for (auto& v : all) out.emplace_back(n, std::move(v));
  return out;
}

/// Packages Y with its J, J~, d and direction indices. The direction
/// indices come from the eta recursion (u_k = e_{mu(k)}); J and Y are
/// re-derived by row following as a consistency check.
inline Chart make_chart(const NumberedYoungDiagram& y) {
  detail::require_admissible(y, "make_chart");
  const int m = y.m();
  const int n = y.n();
  pivot::PivotStructure j = admissible_from_diagram(y);
  const std::vector<int> q = y.first_column();
  Procedure3Result p3 = diagram_procedure3(q, m, n);
  if (!(diagram_from_admissible(j, m) == y) || !(p3.diagram == y) ||
      !(pivot::admissible_from_b_pivots(q, n) == j)) {
    throw std::logic_error("make_chart: inconsistent derived representations");
  }
  return Chart{m,
               n,
               dynamical_indices(y),
               y,
               std::move(j),
               induced_full_structure(y),
               std::move(p3.mu)};
}

/// One chart per d in D(m,n), numbered by minimal_row_order.
inline std::vector<Chart> minimal_atlas(int m, int n) {
  std::vector<Chart> out;
  for (const DynamicalIndices& d : all_dynamical_indices(m, n)) {
    out.push_back(make_chart(numbering_for(d, minimal_row_order(d))));
  }
  return out;
}

/// Every admissible diagram with its chart data; ordered by d (colex), then
/// by row order (lexicographic).
inline std::vector<Chart> enumerate_all(int m, int n) {
  std::vector<Chart> out;
  for (const DynamicalIndices& d : all_dynamical_indices(m, n)) {
    for (const NumberedYoungDiagram& y : numberings_for(d)) {
      out.push_back(make_chart(y));
    }
  }
  return out;
}

}  // namespace lossless::young
