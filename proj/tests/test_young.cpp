#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "lossless/pivot.hpp"
#include "lossless/schur.hpp"
#include "lossless/young.hpp"

using namespace lossless;
using namespace lossless::young;
using pivot::PivotStructure;

namespace {

NumberedYoungDiagram rows(int m, int n, std::vector<std::vector<int>> r) {
  return NumberedYoungDiagram::from_rows(m, n, r);
}

NumberedYoungDiagram example_6() {
  return rows(4, 6, {{2, 4}, {}, {1, 3, 6}, {5}});
}

NumberedYoungDiagram example_12() {
  return rows(5, 12, {{4, 6, 10}, {1, 2, 3, 5, 8, 12}, {9}, {}, {7, 11}});
}

// All sequences q of length m over {0..n} with distinct nonzero entries
// that contain the value 1.
std::vector<std::vector<int>> all_b_pivots(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(m, 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == m) {
      if (std::find(cur.begin(), cur.end(), 1) != cur.end()) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= n; ++v) {
      if (v != 0 && std::find(cur.begin(), cur.begin() + pos, v) !=
                        cur.begin() + pos) {
        continue;
      }
      cur[pos] = v;
      self(self, pos + 1);
    }
    cur[pos] = 0;
  };
  rec(rec, 0);
  return out;
}

std::vector<int> random_b_pivots(int m, int n, std::mt19937& gen) {
  std::vector<int> vals(n);
  std::iota(vals.begin(), vals.end(), 1);
  std::shuffle(vals.begin(), vals.end(), gen);
  const int p = 1 + static_cast<int>(gen() % std::min(m, n));
  std::vector<int> chosen(vals.begin(), vals.begin() + p);
  if (std::find(chosen.begin(), chosen.end(), 1) == chosen.end()) {
    chosen[0] = 1;
  }
  std::vector<int> q(m, 0);
  std::copy(chosen.begin(), chosen.end(), q.begin());
  std::shuffle(q.begin(), q.end(), gen);
  return q;
}

// Independent membership test: left-aligned, and some ordering of the
// nonzero rows makes the column-wise reading of the right-aligned diagram
// equal to 1, 2, ..., n.
bool stacking_oracle(const std::vector<int>& y, int m, int n) {
  std::vector<int> len(m, 0);
  for (int i = 0; i < m; ++i) {
    int j = 0;
    while (j < n && y[i * n + j] != 0) ++j;
    for (int t = j; t < n; ++t) {
      if (y[i * n + t] != 0) return false;
    }
    len[i] = j;
  }
  std::vector<int> order;
  for (int i = 0; i < m; ++i) {
    if (len[i] > 0) order.push_back(i);
  }
  do {
    int expect = 1;
    bool ok = true;
    for (int col = 0; col < n && ok; ++col) {
      for (int i : order) {
        const int shift = n - len[i];
        if (col < shift) continue;
        if (y[i * n + col - shift] != expect++) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

// Calls f on every element of Y(m,n) as a row-major vector.
template <typename F>
void for_each_diagram(int m, int n, F&& f) {
  std::vector<int> y(m * n, 0);
  auto rec = [&](auto&& self, int k) -> void {
    if (k > n) {
      f(y);
      return;
    }
    for (int cell = 0; cell < m * n; ++cell) {
      if (y[cell] != 0) continue;
      y[cell] = k;
      self(self, k + 1);
      y[cell] = 0;
    }
  };
  rec(rec, 1);
}

}  // namespace

TEST(Diagram, Membership) {
  EXPECT_THROW(rows(2, 2, {{1, 1}, {}}), InvalidStructure);
  EXPECT_THROW(rows(2, 2, {{1}, {}}), InvalidStructure);
  EXPECT_THROW(rows(2, 2, {{1, 3}, {2}}), InvalidStructure);
  EXPECT_NO_THROW(rows(2, 2, {{2}, {1}}));
}

TEST(Diagram, AdmissibilityExamples) {
  EXPECT_TRUE(is_admissible_diagram(example_6()));
  EXPECT_TRUE(is_admissible_diagram(example_12()));
  EXPECT_TRUE(is_admissible_diagram(rows(2, 2, {{2}, {1}})));
  EXPECT_FALSE(is_admissible_diagram(
      NumberedYoungDiagram(2, 2, {0, 1, 2, 0})));
  EXPECT_TRUE(is_admissible_diagram(rows(2, 3, {{1, 3}, {2}})));
  // (ii) fails: the last entries 1 and 3 are not {2, 3}.
  EXPECT_FALSE(is_admissible_diagram(rows(2, 3, {{1}, {2, 3}})));
  // (iii) fails: 2 follows 1 but 4 follows 3 in the wrong order.
  EXPECT_FALSE(is_admissible_diagram(rows(2, 4, {{1, 4}, {2, 3}})));
}

TEST(Diagram, AdmissibleSetMatchesStackingOracle) {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 5 && m * n <= 20; ++n) {
      std::uint64_t count = 0;
      for_each_diagram(m, n, [&](const std::vector<int>& y) {
        const bool oracle = stacking_oracle(y, m, n);
        const bool lib = is_admissible_diagram(NumberedYoungDiagram(m, n, y));
        ASSERT_EQ(lib, oracle);
        count += lib ? 1 : 0;
      });
      EXPECT_EQ(count, pivot::count_admissible(m, n))
          << "m=" << m << " n=" << n;
    }
  }
}

TEST(RowFollowing, WorkedExample) {
  const PivotStructure j(6, 10, {3, 1, 5, 6, 4, 7});
  EXPECT_EQ(diagram_from_admissible(j, 4), example_6());
  const std::array<int, 5> q{4, 1, 9, 0, 7};
  EXPECT_EQ(diagram_from_admissible(pivot::admissible_from_b_pivots(q, 12), 5),
            example_12());
  EXPECT_EQ(diagram_from_admissible(PivotStructure(3, 4, {1, 2, 3}), 1),
            rows(1, 3, {{1, 2, 3}}));
  EXPECT_THROW(diagram_from_admissible(PivotStructure(3, 5, {3, 1, 4}), 2),
               InvalidStructure);
}

TEST(ColumnGrowth, WorkedExamples) {
  EXPECT_EQ(diagram_procedure2(std::vector<int>{2, 0, 1, 5}, 4, 6),
            example_6());
  EXPECT_EQ(diagram_procedure2(std::vector<int>{4, 1, 9, 0, 7}, 5, 12),
            example_12());
  EXPECT_EQ(diagram_procedure2(std::vector<int>{1}, 1, 3),
            rows(1, 3, {{1, 2, 3}}));
  EXPECT_THROW(diagram_procedure2(std::vector<int>{2, 3}, 2, 3),
               InvalidStructure);
}

TEST(EtaRecursion, EtaTable) {
  const Procedure3Result r =
      diagram_procedure3(std::vector<int>{4, 1, 9, 0, 7}, 5, 12);
  // Rows of the table, columns eta_12 .. eta_0.
  const std::vector<std::vector<int>> table{
      {4, 3, 2, 1, 2, 1, 4, 3, 2, 1, 0, 0, 0},
      {1, 1, 1, 2, 1, 3, 2, 1, 4, 3, 2, 1, 0},
      {9, 8, 7, 6, 5, 4, 3, 2, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {7, 6, 5, 4, 3, 2, 1, 4, 3, 2, 1, 0, 0}};
  ASSERT_EQ(r.eta.size(), 13u);
  for (int k = 0; k <= 12; ++k) {
    for (int i = 0; i < 5; ++i) {
      EXPECT_EQ(r.eta[k][i], table[i][12 - k]) << "eta_" << k << " row " << i;
    }
  }
  EXPECT_EQ(r.eta[7], (std::vector<int>{1, 3, 4, 0, 2}));
  EXPECT_EQ(r.xi[7], 3);
  EXPECT_EQ(r.mu, (std::vector<int>{2, 5, 1, 3, 2, 5, 1, 2, 1, 2, 2, 2}));
  EXPECT_EQ(r.diagram, example_12());
}

TEST(EtaRecursion, Siso) {
  const Procedure3Result r = diagram_procedure3(std::vector<int>{1}, 1, 2);
  EXPECT_EQ(r.eta[2], (std::vector<int>{1}));
  EXPECT_EQ(r.eta[1], (std::vector<int>{1}));
  EXPECT_EQ(r.eta[0], (std::vector<int>{0}));
  EXPECT_EQ(r.mu, (std::vector<int>{1, 1}));
}

TEST(Procedures, AgreeExhaustively) {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      std::set<std::vector<int>> seen;
      for (const auto& q : all_b_pivots(m, n)) {
        const auto j = pivot::admissible_from_b_pivots(q, n);
        const NumberedYoungDiagram y1 = diagram_from_admissible(j, m);
        EXPECT_EQ(diagram_procedure2(q, m, n), y1);
        const Procedure3Result r3 = diagram_procedure3(q, m, n);
        EXPECT_EQ(r3.diagram, y1);
        EXPECT_EQ(r3.eta[0], std::vector<int>(m, 0));
        EXPECT_TRUE(is_admissible_diagram(y1));
        EXPECT_EQ(admissible_from_diagram(y1), j);
        seen.insert(y1.entries());
      }
      EXPECT_EQ(seen.size(), pivot::count_admissible(m, n));
    }
  }
}

TEST(Procedures, AgreeRandomized) {
  std::mt19937 gen(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = 1 + static_cast<int>(gen() % 8);
    const int n = 1 + static_cast<int>(gen() % 8);
    const std::vector<int> q = random_b_pivots(m, n, gen);
    const NumberedYoungDiagram y1 =
        diagram_from_admissible(pivot::admissible_from_b_pivots(q, n), m);
    ASSERT_EQ(diagram_procedure2(q, m, n), y1);
    ASSERT_EQ(diagram_procedure3(q, m, n).diagram, y1);
  }
}

TEST(EtaRecursion, MuSatisfiesDirectionCondition) {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 5; ++n) {
      for (const auto& q : all_b_pivots(m, n)) {
        EXPECT_TRUE(
            schur::check_direction_condition(diagram_procedure3(q, m, n).mu));
      }
    }
  }
}

TEST(InducedStructure, Examples) {
  EXPECT_EQ(induced_full_structure(example_6()).values(),
            (std::vector<int>{3, 1, 7, 5, 4, 11}));
  EXPECT_EQ(induced_full_structure(rows(3, 4, {{1, 2}, {3}, {4}})).values(),
            (std::vector<int>{1, 4, 2, 3}));
  EXPECT_EQ(induced_full_structure(rows(1, 5, {{1, 2, 3, 4, 5}})).values(),
            (std::vector<int>{1, 2, 3, 4, 5}));
}

TEST(InducedStructure, ColumnFormReadsDiagram) {
  for (const Chart& c : enumerate_all(3, 4)) {
    const auto qt = pivot::row_to_column(c.Jtilde);
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 4; ++j) {
        EXPECT_EQ(c.diagram(i, j), qt((j - 1) * 3 + i));
      }
    }
  }
}

TEST(DynamicalIndices, Examples) {
  EXPECT_EQ(dynamical_indices(example_6()).values(),
            (std::vector<int>{2, 0, 3, 1}));
  EXPECT_EQ(dynamical_indices(rows(3, 4, {{1, 2}, {3}, {4}})).values(),
            (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(dynamical_indices(rows(3, 4, {{1, 2, 3, 4}, {}, {}})).values(),
            (std::vector<int>{4, 0, 0}));
  EXPECT_THROW(DynamicalIndices(4, {2, 1}), InvalidStructure);
}

TEST(RightAlign, Example) {
  const NumberedYoungDiagram yr = right_align(example_6());
  EXPECT_EQ(yr.entries(),
            (std::vector<int>{0, 0, 0, 0, 2, 4,  //
                              0, 0, 0, 0, 0, 0,  //
                              0, 0, 0, 1, 3, 6,  //
                              0, 0, 0, 0, 0, 5}));
  const NumberedYoungDiagram siso = rows(1, 3, {{1, 2, 3}});
  EXPECT_EQ(right_align(siso), siso);
  EXPECT_THROW(right_align(NumberedYoungDiagram(2, 2, {0, 1, 2, 0})),
               InvalidStructure);
}

TEST(RightAlign, StackingOfExample) {
  EXPECT_EQ(stacked_sequence(example_6(), std::vector<int>{1, 4, 3}),
            (std::vector<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(stacked_sequence(example_6(), std::vector<int>{3, 1, 4}),
            (std::vector<int>{1, 3, 2, 6, 4, 5}));
}

TEST(Numberings, CountsAndAdmissibility) {
  EXPECT_EQ(numberings_for(DynamicalIndices(4, {2, 1, 1})).size(), 6u);
  EXPECT_EQ(numberings_for(DynamicalIndices(4, {4, 0, 0})).size(), 1u);
  const auto d121 = numberings_for(DynamicalIndices(4, {1, 2, 1}));
  EXPECT_EQ(d121.size(), 6u);
  for (const auto& y : d121) EXPECT_TRUE(is_admissible_diagram(y));
}

TEST(Numberings, StackingAndUnion) {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      std::set<std::vector<int>> from_d;
      for (const DynamicalIndices& d : all_dynamical_indices(m, n)) {
        std::vector<int> order = nonzero_rows(d);
        const int pb = static_cast<int>(order.size());
        const auto ys = numberings_for(d);
        std::size_t fact = 1;
        for (int t = 2; t <= pb; ++t) fact *= t;
        EXPECT_EQ(ys.size(), fact);
        std::size_t idx = 0;
        do {
          const NumberedYoungDiagram& y = ys[idx++];
          EXPECT_TRUE(is_admissible_diagram(y));
          EXPECT_EQ(dynamical_indices(y), d);
          std::vector<int> expect(n);
          std::iota(expect.begin(), expect.end(), 1);
          EXPECT_EQ(stacked_sequence(y, order), expect);
          from_d.insert(y.entries());
        } while (std::next_permutation(order.begin(), order.end()));
      }
      std::set<std::vector<int>> all;
      for (const Chart& c : enumerate_all(m, n)) all.insert(c.diagram.entries());
      EXPECT_EQ(from_d, all);
      EXPECT_EQ(all.size(), pivot::count_admissible(m, n));
    }
  }
}

TEST(Atlas, MinimalCounts) {
  EXPECT_EQ(minimal_atlas(3, 4).size(), 15u);
  EXPECT_EQ(minimal_atlas(1, 6).size(), 1u);
  EXPECT_EQ(minimal_atlas(2, 3).size(), 4u);
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= 5; ++n) {
      EXPECT_EQ(minimal_atlas(m, n).size(), pivot::binomial(m + n - 1, m - 1));
    }
  }
}

TEST(Atlas, MinimalNumberingIsStableNonIncreasing) {
  for (const Chart& c : minimal_atlas(3, 4)) {
    const std::vector<int> order = minimal_row_order(c.d);
    for (std::size_t t = 1; t < order.size(); ++t) {
      EXPECT_GE(c.d(order[t - 1]), c.d(order[t]));
      if (c.d(order[t - 1]) == c.d(order[t])) {
        EXPECT_LT(order[t - 1], order[t]);
      }
    }
    EXPECT_EQ(c.diagram, numbering_for(c.d, order));
  }
  // d = (2,1,1): rows 1,2,3 in order, so Y = [[1,2],[3],[4]].
  bool found = false;
  for (const Chart& c : minimal_atlas(3, 4)) {
    if (c.d.values() == std::vector<int>{2, 1, 1}) {
      EXPECT_EQ(c.diagram, rows(3, 4, {{1, 2}, {3}, {4}}));
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Atlas, EnumerateCounts) {
  EXPECT_EQ(enumerate_all(3, 4).size(), 39u);
  EXPECT_EQ(enumerate_all(1, 4).size(), 1u);
  EXPECT_EQ(enumerate_all(4, 1).size(), 4u);
}

TEST(Atlas, EnumerationOrder) {
  const auto charts = enumerate_all(3, 4);
  const auto ds = all_dynamical_indices(3, 4);
  // colex: the last index varies slowest.
  for (std::size_t t = 1; t < ds.size(); ++t) {
    std::vector<int> a = ds[t - 1].values();
    std::vector<int> b = ds[t].values();
    std::reverse(a.begin(), a.end());
    std::reverse(b.begin(), b.end());
    EXPECT_LT(a, b);
  }
  std::size_t pos = 0;
  for (const DynamicalIndices& d : ds) {
    for (const auto& y : numberings_for(d)) {
      EXPECT_EQ(charts[pos++].diagram, y);
    }
  }
  EXPECT_EQ(pos, charts.size());
}

TEST(Chart, RepresentationsConsistent) {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      for (const Chart& c : enumerate_all(m, n)) {
        EXPECT_TRUE(pivot::is_admissible(c.J, m));
        EXPECT_EQ(diagram_from_admissible(c.J, m), c.diagram);
        EXPECT_EQ(induced_full_structure(c.diagram), c.Jtilde);
        EXPECT_TRUE(c.Jtilde.is_full());
        EXPECT_EQ(schur::direction_vectors_from_chart(c.diagram), c.u_idx);
      }
    }
  }
}

TEST(Chart, RejectsInadmissible) {
  EXPECT_THROW(make_chart(rows(2, 4, {{1, 4}, {2, 3}})), InvalidStructure);
}
