#include <gtest/gtest.h>

#include "polyhex/column_dp.hpp"
#include "polyhex/enumerate.hpp"

#include <set>

using namespace polyhex;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// Every polyhex of each area up to max_area by repeated one-cell growth
// and set deduplication.
std::vector<std::set<Figure>> grown_polyhexes(int max_area) {
  std::vector<std::set<Figure>> by_area(static_cast<std::size_t>(max_area) + 1);
  by_area[1].insert(Figure{{0, 0}});
  for (int n = 1; n < max_area; ++n)
    for (const Figure& f : by_area[static_cast<std::size_t>(n)])
      for (const Cell& c : f.cells())
        for (Cell nb : neighbors(c)) {
          if (f.contains(nb)) continue;
          std::vector<Cell> cells(f.cells().begin(), f.cells().end());
          cells.push_back(nb);
          by_area[static_cast<std::size_t>(n) + 1].insert(Figure(std::move(cells)));
        }
  return by_area;
}

}  // namespace

TEST(Enumerate, AreaOneHasOneFigure) {
  int count = 0;
  enumerate_polyhexes(1, [&](std::span<const Cell> cells) {
    ++count;
    EXPECT_EQ(cells.size(), 1u);
  });
  EXPECT_EQ(count, 1);
  EXPECT_THROW(enumerate_polyhexes(0, [](std::span<const Cell>) {}), std::invalid_argument);
}

TEST(Enumerate, MatchesGrowthOracleUpToArea7) {
  const auto grown = grown_polyhexes(7);
  std::vector<std::set<Figure>> seen(8);
  std::size_t visits = 0;
  enumerate_polyhexes(7, [&](std::span<const Cell> cells) {
    ++visits;
    const Figure f(std::vector<Cell>(cells.begin(), cells.end()));
    seen[f.area()].insert(f);
  });
  std::size_t distinct = 0;
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(seen[static_cast<std::size_t>(n)], grown[static_cast<std::size_t>(n)]) << "area " << n;
    distinct += seen[static_cast<std::size_t>(n)].size();
  }
  EXPECT_EQ(visits, distinct);
}

TEST(Enumerate, PublishedCountsToArea10) {
  const auto t = enumerate_tallies(10);
  EXPECT_EQ(t.all_table().counts, ints({1, 3, 11, 44, 186, 814, 3652, 16689, 77359, 362671}));
  EXPECT_EQ(t.level(1).counts, ints({1, 3, 11, 44, 184, 786, 3391, 14683, 63619, 275506}));
  EXPECT_EQ(t.level(2).counts, ints({1, 3, 11, 44, 186, 812, 3614, 16254, 73464, 332603}));
  EXPECT_EQ(t.level(0).counts, ints({1, 3, 11, 42, 162, 626, 2419, 9346, 36106, 139483}));
}

TEST(Enumerate, SmallestGapsBetweenModels) {
  const auto t = enumerate_tallies(6);
  for (int n = 1; n <= 6; ++n) {
    if (n < 5) {
      EXPECT_EQ(t.all_table()(n), t.level(1)(n));
    }
    EXPECT_EQ(Integer(t.all_table()(n) - t.level(2)(n)), n < 6 ? 0 : 2);
  }
  EXPECT_EQ(Integer(t.all_table()(5) - t.level(1)(5)), 2);
}

TEST(Enumerate, ModelOrderingPerArea) {
  const auto t = enumerate_tallies(9);
  for (int n = 1; n <= 9; ++n) {
    EXPECT_GE(t.all_table()(n), t.level(2)(n));
    EXPECT_GE(t.level(2)(n), t.level(1)(n));
    EXPECT_GE(t.level(1)(n), t.level(0)(n));
    EXPECT_GT(t.level(0)(n), 0);
  }
}

TEST(Enumerate, IncompleteCountsAndClassSums) {
  const auto t = enumerate_tallies(8, {1, 8});
  EXPECT_EQ(t.incomplete_level1, ints({0, 1, 6, 27, 114, 473, 1968, 8267}));
  for (int n = 1; n <= 8; ++n) {
    Integer s = 0, tt = 0;
    for (ClassLabel l : kAllClassLabels)
      (is_complete_class(l) ? s : tt) += t.by_class.at(l)[static_cast<std::size_t>(n - 1)];
    EXPECT_EQ(s, t.level(1)(n));
    EXPECT_EQ(tt, t.incomplete_level1[static_cast<std::size_t>(n - 1)]);
  }
}

TEST(Enumerate, HeightTallies) {
  const auto t = enumerate_tallies(8);
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(t.level1_by_height.at({n, n}), 1);  // the single column
    Integer count = 0, sum = 0;
    for (int h = 1; h <= n; ++h) {
      auto it = t.level1_by_height.find({n, h});
      if (it == t.level1_by_height.end()) continue;
      count += it->second;
      sum += it->second * h;
    }
    EXPECT_EQ(count, t.level(1)(n));
    EXPECT_EQ(sum, t.level1_height_sum[static_cast<std::size_t>(n - 1)]);
  }
}

TEST(Enumerate, ColumnProfile) {
  const std::vector<Cell> cells = {{0, 0}, {0, 3}, {1, 0}, {1, 1}, {1, 2}};
  const auto p = column_profile(cells);
  EXPECT_EQ(p.max_runs, 2);
  EXPECT_EQ(p.max_gap, 2);
  EXPECT_EQ(p.last_height, 3);
  EXPECT_EQ(minimal_level(p), 2);
}

TEST(Enumerate, DeterministicAcrossThreadCounts) {
  const auto a = enumerate_tallies(9, {1, 7});
  for (int threads : {2, 3, 5}) {
    const auto b = enumerate_tallies(9, {threads, 7});
    EXPECT_EQ(a.all, b.all);
    EXPECT_EQ(a.by_level, b.by_level);
    EXPECT_EQ(a.level1_height_sum, b.level1_height_sum);
    EXPECT_EQ(a.level1_by_height, b.level1_by_height);
    EXPECT_EQ(a.by_class, b.by_class);
    EXPECT_EQ(a.incomplete_level1, b.incomplete_level1);
  }
}

TEST(ColumnDp, MatchesEnumeration) {
  const auto t = enumerate_tallies(10);
  for (int m = 0; m <= 2; ++m) EXPECT_EQ(dp_count_subconvex(m, 10), t.level(m)) << "level " << m;
  const auto d = dp_tally(1, 10);
  EXPECT_EQ(d.height_sum, t.level1_height_sum);
}

TEST(ColumnDp, IncompleteMatchesLeftFactorEnumeration) {
  const auto t = enumerate_tallies(9, {1, 9});
  EXPECT_EQ(dp_tally(1, 9).incomplete.counts, t.incomplete_level1);
}

TEST(ColumnDp, PublishedLevelTwoCoefficients) {
  EXPECT_EQ(dp_count_subconvex(2, 12).counts,
            ints({1, 3, 11, 44, 186, 812, 3614, 16254, 73464, 332603, 1505877, 6813301}));
}

TEST(ColumnDp, DeterministicAcrossThreadCounts) {
  const auto a = dp_tally(2, 40, 1);
  const auto b = dp_tally(2, 40, 3);
  EXPECT_EQ(a.complete, b.complete);
  EXPECT_EQ(a.incomplete, b.incomplete);
  EXPECT_EQ(a.height_sum, b.height_sum);
}

TEST(ColumnDp, ExactIntegerPathAgreesWithFixedWidth) {
  const auto fixed = detail::run_column_dp<unsigned __int128>(2, 30, 1);
  const auto exact = detail::run_column_dp<Integer>(2, 30, 2);
  EXPECT_EQ(fixed.complete, exact.complete);
  EXPECT_EQ(fixed.incomplete, exact.incomplete);
  EXPECT_EQ(fixed.height_sum, exact.height_sum);
}

TEST(ColumnDp, RejectsBadInput) {
  EXPECT_THROW(dp_tally(3, 10), std::invalid_argument);
  EXPECT_THROW(dp_tally(1, 0), std::invalid_argument);
}

TEST(CoefficientTable, JsonRoundTrip) {
  const CoefficientTable t(Model::level2, ints({1, 3, 11}));
  const auto j = to_json(t);
  EXPECT_EQ(j.dump(), R"({"counts":["1","3","11"],"max_area":3,"model":"level2"})");
  EXPECT_EQ(table_from_json(j), t);
  EXPECT_THROW(table_from_json(nlohmann::json::parse(R"({"model":"x","max_area":0,"counts":[]})")),
               std::invalid_argument);
}
