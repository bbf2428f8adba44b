#include <gtest/gtest.h>

#include "polyhex/enumerate.hpp"
#include "polyhex/lattice.hpp"

#include <set>

using namespace polyhex;

namespace {

std::vector<Figure> all_polyhexes(int max_area) {
  std::vector<Figure> out;
  enumerate_polyhexes(max_area, [&](std::span<const Cell> cells) {
    out.emplace_back(std::vector<Cell>(cells.begin(), cells.end()));
  });
  return out;
}

// Columns with at most two runs and gap at most max_gap, all inside rows
// [lo, hi].
std::vector<std::vector<int>> column_sets(int lo, int hi, int max_gap) {
  std::vector<std::vector<int>> out;
  for (int b = lo; b <= hi; ++b)
    for (int t = b; t <= hi; ++t) {
      std::vector<int> run;
      for (int r = b; r <= t; ++r) run.push_back(r);
      out.push_back(run);
      for (int g = 1; g <= max_gap; ++g)
        for (int t2 = t + g + 1; t2 <= hi; ++t2) {
          auto two = run;
          for (int r = t + g + 1; r <= t2; ++r) two.push_back(r);
          out.push_back(two);
        }
    }
  return out;
}

// Incomplete at level one, by brute force: disconnected, level-one columns,
// and some single level-one column appended on the right yields a
// connected level-one polyomino.
bool incomplete_by_extension(const Figure& f) {
  if (is_polyomino(f)) return false;
  const auto cols = columns(f);
  if (!columns_within_level(cols, 1)) return false;
  const Column& last = cols.back();
  for (const auto& rows : column_sets(last.bottom() - 2, last.top() + 2, 1)) {
    std::vector<Cell> extra;
    for (int r : rows) extra.push_back({last.col + 1, r});
    const Figure g = with_cells(f, extra);
    if (is_polyomino(g) && is_level_m_subconvex(g, 1)) return true;
  }
  return false;
}

// Column sequences (up to two runs, gap up to 2) of total area <= max_area
// where every column touches its predecessor.
std::vector<Figure> column_sequences(int max_area) {
  std::vector<Figure> out;
  std::vector<Cell> cells;
  std::function<void(int, int, int, int)> grow = [&](int col, int lo, int hi, int area) {
    for (const auto& rows : column_sets(lo, hi, 2)) {
      const int n = static_cast<int>(rows.size());
      if (area + n > max_area) continue;
      if (col == 0 && rows.front() != 0) continue;
      bool touches = col == 0;
      for (int r : rows)
        for (const Cell& c : cells)
          if (c.col == col - 1 && adjacent(c, Cell{col, r})) touches = true;
      if (!touches) continue;
      for (int r : rows) cells.push_back({col, r});
      out.emplace_back(cells);
      grow(col + 1, rows.front() - max_area, rows.back() + max_area, area + n);
      cells.resize(cells.size() - rows.size());
    }
  };
  grow(0, 0, max_area + 2, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST(Cell, NeighborsFollowConvention) {
  const auto n = neighbors({0, 0});
  const std::set<Cell> got(n.begin(), n.end());
  const std::set<Cell> want = {{0, 1}, {0, -1}, {1, 0}, {1, -1}, {-1, 0}, {-1, 1}};
  EXPECT_EQ(got, want);
  EXPECT_TRUE(adjacent({0, 0}, {1, -1}));
  EXPECT_FALSE(adjacent({0, 0}, {1, 1}));
  EXPECT_EQ(upper_right({2, 3}), (Cell{3, 3}));
  EXPECT_EQ(lower_right({2, 3}), (Cell{3, 2}));
}

TEST(Cell, AdjacencyIsSymmetric) {
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      for (Cell n : neighbors({x, y})) EXPECT_TRUE(adjacent(n, {x, y}));
}

TEST(Figure, CanonicalTranslation) {
  const Figure a{{3, 5}, {3, 6}, {4, 4}};
  const Figure b{{0, 1}, {0, 2}, {1, 0}};
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.cells().front(), (Cell{0, 1}));
  EXPECT_THROW(Figure(std::vector<Cell>{}), EmptyFigureError);
  EXPECT_EQ(Figure({{0, 0}, {0, 0}}).area(), 1u);
}

TEST(Figure, Connectivity) {
  EXPECT_TRUE(is_polyomino(Figure{{0, 0}}));
  EXPECT_FALSE(is_polyomino(Figure{{0, 0}, {0, 2}}));
  // (1,1) touches (0,1) and (0,2) only, so (0,0) stays isolated.
  EXPECT_FALSE(is_polyomino(Figure{{0, 0}, {0, 2}, {1, 1}}));
  // (1,0) touches (0,0) and (0,1); (0,2) stays isolated.
  EXPECT_FALSE(is_polyomino(Figure{{0, 0}, {0, 2}, {1, 0}}));
  // A two-cell second column joins both.
  EXPECT_TRUE(is_polyomino(Figure{{0, 0}, {0, 2}, {1, 0}, {1, 1}}));
}

TEST(Figure, ColumnDecomposition) {
  const auto single = columns(Figure{{0, 0}, {0, 1}, {0, 2}});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].runs, (std::vector<polyhex::Run>{{0, 3}}));
  EXPECT_EQ(single[0].height(), 3);

  const auto holed = columns(Figure{{0, 0}, {0, 2}});
  ASSERT_EQ(holed.size(), 1u);
  EXPECT_EQ(holed[0].runs, (std::vector<polyhex::Run>{{0, 1}, {2, 1}}));
  EXPECT_EQ(holed[0].gaps, (std::vector<polyhex::Run>{{1, 1}}));
  EXPECT_EQ(holed[0].height(), 3);
}

TEST(Figure, LevelPredicates) {
  const Figure column{{0, 0}, {0, 1}};
  for (int m = 0; m <= 3; ++m) EXPECT_TRUE(is_level_m_subconvex(column, m));

  // One column with a one-cell gap, closed by the next column.
  const Figure one_gap{{0, 0}, {0, 2}, {1, 0}, {1, 1}};
  EXPECT_TRUE(is_level_m_subconvex(one_gap, 1));
  EXPECT_FALSE(is_column_convex(one_gap));

  // Two-cell gap bridged by a run of three in the next column.
  const Figure two_gap{{0, 0}, {0, 3}, {1, 0}, {1, 1}, {1, 2}};
  ASSERT_TRUE(is_polyomino(two_gap));
  EXPECT_FALSE(is_level_m_subconvex(two_gap, 1));
  EXPECT_TRUE(is_level_m_subconvex(two_gap, 2));

  EXPECT_THROW(is_level_m_subconvex(Figure{{0, 0}, {0, 2}}, 1), LatticeError);
  EXPECT_THROW(is_level_m_subconvex(column, -1), LatticeError);
}

TEST(Figure, IncompleteExamples) {
  EXPECT_TRUE(is_incomplete_level_m(Figure{{0, 0}, {0, 2}}, 1));
  EXPECT_EQ(cork(Figure{{0, 0}, {0, 2}}), (std::vector<Cell>{{1, 0}, {1, 1}}));
  EXPECT_FALSE(is_incomplete_level_m(Figure{{0, 0}, {0, 1}}, 1));
  EXPECT_FALSE(is_incomplete_level_m(Figure{{0, 0}, {0, 3}}, 1));
  EXPECT_TRUE(is_incomplete_level_m(Figure{{0, 0}, {0, 3}}, 2));
  EXPECT_FALSE(is_incomplete_level_m(Figure{{0, 0}, {0, 2}}, 0));
}

TEST(Figure, IncompleteMatchesExhaustiveExtension) {
  const auto candidates = column_sequences(7);
  std::vector<int> per_area(8, 0);
  int disconnected = 0;
  for (const Figure& f : candidates) {
    const bool oracle = incomplete_by_extension(f);
    ASSERT_EQ(is_incomplete_level_m(f, 1), oracle) << to_json(f).dump();
    if (!is_polyomino(f)) ++disconnected;
    if (oracle) {
      ++per_area[f.area()];
      EXPECT_TRUE(columns(f).back().has_hole());
    }
  }
  EXPECT_GT(disconnected, 1000);
  EXPECT_EQ(per_area, (std::vector<int>{0, 0, 1, 6, 27, 114, 473, 1968}));
}

TEST(Figure, Pivots) {
  const Figure two{{0, 0}, {0, 1}, {1, -1}, {1, 0}};
  EXPECT_EQ(pivot_cell(two), lower_right(Cell{0, 1}));  // canonical rows shift by one
  EXPECT_EQ(pivot_cell(Figure{{0, 1}, {1, 0}}), (Cell{1, 0}));
  EXPECT_THROW(pivot_cell(Figure{{0, 0}}), LatticeError);
  EXPECT_THROW(lower_pivot_cell(Figure{{0, 0}, {1, 0}}), LatticeError);

  const Figure t{{0, 0}, {1, 0}, {1, 2}};
  ASSERT_TRUE(is_incomplete_level_m(t, 1));
  EXPECT_EQ(lower_pivot_cell(t), (Cell{1, -1}));
  EXPECT_EQ(upper_pivot_cell(t), (Cell{1, 0}));
  EXPECT_EQ(classify(t), ClassLabel::T_gamma);
  EXPECT_THROW(upper_pivot_cell(Figure{{0, 0}, {0, 2}}), LatticeError);
}

TEST(Classify, SmallExamples) {
  EXPECT_EQ(classify(Figure{{0, 0}}), ClassLabel::S_alpha);
  EXPECT_EQ(classify(Figure{{0, 0}, {0, 1}, {0, 2}}), ClassLabel::S_alpha);
  EXPECT_EQ(classify(Figure{{0, 0}, {0, 2}}), ClassLabel::T_alpha);
  // Last column starts at the pivot cell.
  EXPECT_EQ(classify(Figure{{0, 1}, {1, 0}}), ClassLabel::S_beta);
  // Last column starts above the pivot cell.
  EXPECT_EQ(classify(Figure{{0, 0}, {1, 0}}), ClassLabel::S_gamma);
  EXPECT_THROW(classify(Figure{{0, 0}, {0, 3}}), LatticeError);
}

TEST(LatticeInvariants, NestingAndHeightsUpToArea8) {
  for (const Figure& f : all_polyhexes(8)) {
    ASSERT_TRUE(is_polyomino(f));
    const bool cc = is_column_convex(f), l1 = is_level_m_subconvex(f, 1), l2 = is_level_m_subconvex(f, 2);
    EXPECT_TRUE(!cc || l1);
    EXPECT_TRUE(!l1 || l2);
    for (const Column& c : columns(f)) {
      int gap_cells = 0;
      for (const polyhex::Run& g : c.gaps) gap_cells += g.length;
      EXPECT_EQ(c.height(), c.cell_count() + gap_cells);
    }
  }
}

TEST(LatticeInvariants, VerticalReflectionPreservesLevelsUpToArea8) {
  for (const Figure& f : all_polyhexes(8)) {
    const Figure r = reflect_vertical(f);
    ASSERT_EQ(r.area(), f.area());
    ASSERT_TRUE(is_polyomino(r));
    EXPECT_EQ(reflect_vertical(r), f);
    EXPECT_EQ(reflect_horizontal(reflect_horizontal(f)), f);
    for (int m = 0; m <= 2; ++m) EXPECT_EQ(is_level_m_subconvex(r, m), is_level_m_subconvex(f, m));
  }
}

TEST(LatticeInvariants, HorizontalReflectionMapsTToTUpToArea8) {
  int count = 0;
  enumerate_left_factors(8, 1, [&](const Figure& f, Membership mem) {
    if (mem != Membership::incomplete) return;
    ++count;
    const Figure r = reflect_horizontal(f);
    ASSERT_TRUE(is_incomplete_level_m(r, 1));
    const Column a = columns(f).back(), b = columns(r).back();
    EXPECT_EQ(a.runs.front().length, b.runs.back().length);
    EXPECT_EQ(a.runs.back().length, b.runs.front().length);
  });
  EXPECT_EQ(count, 1 + 6 + 27 + 114 + 473 + 1968 + 8267);
}

TEST(LatticeInvariants, PartitionAndPivotAdjacencyUpToArea8) {
  std::map<ClassLabel, int> tally;
  int s_count = 0;
  for (const Figure& f : all_polyhexes(8)) {
    if (!is_level_m_subconvex(f, 1)) continue;
    ++s_count;
    const ClassLabel l = classify(f);
    EXPECT_TRUE(is_complete_class(l));
    ++tally[l];
    if (f.column_count() >= 2) {
      const auto cols = columns(f);
      const Column& prev = cols[cols.size() - 2];
      EXPECT_TRUE(adjacent(pivot_cell(f), Cell{prev.col, prev.bottom()}));
    }
  }
  int t_count = 0;
  enumerate_left_factors(8, 1, [&](const Figure& f, Membership mem) {
    if (mem != Membership::incomplete) return;
    ++t_count;
    const ClassLabel l = classify(f);
    EXPECT_FALSE(is_complete_class(l));
    ++tally[l];
  });
  int s_sum = 0, t_sum = 0;
  for (const auto& [l, n] : tally) (is_complete_class(l) ? s_sum : t_sum) += n;
  EXPECT_EQ(s_sum, s_count);
  EXPECT_EQ(t_sum, t_count);
  for (ClassLabel l : kAllClassLabels) EXPECT_GT(tally[l], 0) << to_string(l);
}

TEST(FigureJson, RoundTrip) {
  const Figure f{{0, 0}, {0, 2}, {1, 1}};
  EXPECT_EQ(to_json(f).dump(), "[[0,0],[0,2],[1,1]]");
  EXPECT_EQ(figure_from_json(to_json(f)), f);
  EXPECT_THROW(figure_from_json(nlohmann::json::parse("[[0]]")), LatticeError);
  EXPECT_THROW(figure_from_json(nlohmann::json::parse("{}")), LatticeError);
}
