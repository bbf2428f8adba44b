#pragma once

// Brute-force ground truth: Redelmeier growth of every fixed polyhex up to
// a given area, a column-by-column generator of level-m left factors, and
// the per-area tallies derived from them.

#include "polyhex/coefficients.hpp"
#include "polyhex/lattice.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace polyhex {

inline constexpr int kMaxEnumerationArea = 30;

namespace detail {

// One Redelmeier walker. Cells are anchored so that the lexicographically
// smallest (col, row) cell is (0, 0); cells left of it or below it in
// column 0 are forbidden.
class RedelmeierWalker {
 public:
  explicit RedelmeierWalker(int max_area)
      : n_(max_area), height_(2 * max_area + 3), width_(max_area + 2) {
    mark_.assign(static_cast<std::size_t>(width_ * height_), 0);
    for (int y = -n_ - 1; y <= n_ + 1; ++y) {
      mark_[index(-1, y)] = 1;
      if (y < 0) mark_[index(0, y)] = 1;
    }
    buffers_.assign(static_cast<std::size_t>(n_ + 1), std::vector<int>(static_cast<std::size_t>(4 * n_ + 8)));
    cells_.resize(static_cast<std::size_t>(n_));
  }

  // Visits subtrees rooted at area `split_area` whose running index is
  // congruent to `part` mod `parts`; smaller figures go to part 0.
  template <typename Visitor>
  void run(Visitor& visit, int part, int parts, int split_area) {
    visit_ = [&visit](std::span<const Cell> cells) { visit(cells); };
    part_ = part;
    parts_ = parts;
    split_area_ = split_area;
    subtree_ = 0;
    const int origin = index(0, 0);
    mark_[origin] = 1;
    buffers_[0][0] = origin;
    recurse(0, 1);
    mark_[origin] = 0;
  }

 private:
  int index(int x, int y) const { return (x + 1) * height_ + (y + n_ + 1); }
  Cell decode(int idx) const { return {idx / height_ - 1, idx % height_ - n_ - 1}; }

  void recurse(int depth, int count) {
    std::vector<int>& buf = buffers_[static_cast<std::size_t>(depth)];
    while (count > 0) {
      const int c = buf[static_cast<std::size_t>(--count)];
      cells_[static_cast<std::size_t>(depth)] = decode(c);
      const int area = depth + 1;
      bool mine = true;
      if (area == split_area_) mine = (subtree_++ % parts_) == part_;
      else if (area < split_area_) mine = part_ == 0;
      if (mine) visit_(std::span<const Cell>(cells_.data(), static_cast<std::size_t>(area)));
      if (area >= n_) continue;
      if (area == split_area_ && !mine) continue;

      std::vector<int>& next = buffers_[static_cast<std::size_t>(depth + 1)];
      std::copy_n(buf.begin(), count, next.begin());
      int added = 0;
      const Cell cell = decode(c);
      for (Cell nb : neighbors(cell)) {
        const int j = index(nb.col, nb.row);
        if (mark_[j]) continue;
        mark_[j] = 1;
        next[static_cast<std::size_t>(count + added++)] = j;
      }
      recurse(depth + 1, count + added);
      for (int k = 0; k < added; ++k) mark_[next[static_cast<std::size_t>(count + k)]] = 0;
    }
  }

  int n_, height_, width_;
  std::vector<std::uint8_t> mark_;
  std::vector<std::vector<int>> buffers_;
  std::vector<Cell> cells_;
  std::function<void(std::span<const Cell>)> visit_;
  int part_ = 0, parts_ = 1, split_area_ = 1;
  long subtree_ = 0;
};

inline void check_area(int max_area) {
  if (max_area < 1) throw std::invalid_argument("max_area must be at least 1");
  if (max_area > kMaxEnumerationArea) throw std::invalid_argument("max_area exceeds the enumeration limit");
}

}  // namespace detail

// Calls visit(cells) once per fixed polyhex of area <= max_area.
// `cells` is a translation representative with its lexicographically
// smallest cell at (0, 0); it is only valid during the call.
template <typename Visitor>
void enumerate_polyhexes(int max_area, Visitor&& visit) {
  detail::check_area(max_area);
  detail::RedelmeierWalker walker(max_area);
  walker.run(visit, 0, 1, 1);
}

// The subset of the enumeration belonging to worker `part` of `parts`.
// The union over all parts visits every polyhex exactly once.
template <typename Visitor>
void enumerate_polyhexes_part(int max_area, int part, int parts, Visitor&& visit) {
  detail::check_area(max_area);
  if (parts < 1 || part < 0 || part >= parts) throw std::invalid_argument("bad work partition");
  detail::RedelmeierWalker walker(max_area);
  walker.run(visit, part, parts, std::min(max_area, 4));
}

// Column profile of a figure given as raw cells: runs, holes, height of the
// last column. Valid for areas up to kMaxEnumerationArea.
struct ColumnProfile {
  int max_runs = 0;
  int max_gap = 0;  // largest gap among two-run columns
  int last_height = 0;
};

inline ColumnProfile column_profile(std::span<const Cell> cells) {
  std::array<std::uint64_t, kMaxEnumerationArea + 1> masks{};
  int min_col = cells.front().col, max_col = min_col, min_row = cells.front().row;
  for (const Cell& c : cells) {
    min_col = std::min(min_col, c.col);
    max_col = std::max(max_col, c.col);
    min_row = std::min(min_row, c.row);
  }
  for (const Cell& c : cells) masks[static_cast<std::size_t>(c.col - min_col)] |= std::uint64_t{1} << (c.row - min_row);
  ColumnProfile p;
  for (int x = 0; x <= max_col - min_col; ++x) {
    const std::uint64_t m = masks[static_cast<std::size_t>(x)];
    const int runs = std::popcount(m & ~(m << 1));
    const int span = 64 - std::countl_zero(m) - std::countr_zero(m);
    p.max_runs = std::max(p.max_runs, runs);
    if (runs == 2) p.max_gap = std::max(p.max_gap, span - std::popcount(m));
    if (x == max_col - min_col) p.last_height = span;
  }
  return p;
}

// Smallest m for which a polyomino with this profile is level-m
// column-subconvex; -1 if some column has three or more runs.
inline int minimal_level(const ColumnProfile& p) {
  if (p.max_runs > 2) return -1;
  return p.max_runs <= 1 ? 0 : p.max_gap;
}

// Every figure whose columns all satisfy the level-m run/gap rules and
// which is a complete or incomplete level-m figure, up to `max_area`,
// grown one column at a time. Each prefix of such a figure is again one,
// so the search prunes on membership.
template <typename Visitor>
void enumerate_left_factors(int max_area, int m, Visitor&& visit) {
  detail::check_area(max_area);
  if (m < 0) throw std::invalid_argument("level must be non-negative");

  struct Shape {
    std::vector<Run> runs;  // relative to bottom 0
    int size;
    int height;
  };
  std::vector<Shape> shapes;
  for (int i = 1; i <= max_area; ++i) shapes.push_back({{Run{0, i}}, i, i});
  for (int g = 1; g <= m; ++g)
    for (int a = 1; a < max_area; ++a)
      for (int b = 1; a + b <= max_area; ++b)
        shapes.push_back({{Run{0, a}, Run{a + g, b}}, a + b, a + b + g});

  std::vector<Cell> cells;
  std::function<void(int, int, int)> extend = [&](int col, int bottom, int top) {
    const int area = static_cast<int>(cells.size());
    for (const Shape& s : shapes) {
      if (area + s.size > max_area) continue;
      // New column rows [p, p + height) must meet rows [bottom - 1, top].
      for (int p = bottom - s.height; p <= top; ++p) {
        const std::size_t mark = cells.size();
        for (const Run& r : s.runs)
          for (int y = 0; y < r.length; ++y) cells.push_back({col + 1, p + r.bottom + y});
        const Figure f(cells);
        const Membership mem = membership(f, m);
        if (mem != Membership::neither) {
          visit(f, mem);
          extend(col + 1, p, p + s.height - 1);
        }
        cells.resize(mark);
      }
    }
  };

  for (const Shape& s : shapes) {
    cells.clear();
    for (const Run& r : s.runs)
      for (int y = 0; y < r.length; ++y) cells.push_back({0, r.bottom + y});
    const Figure f(cells);
    const Membership mem = membership(f, m);
    if (mem == Membership::neither) continue;
    visit(f, mem);
    extend(0, 0, s.height - 1);
  }
}

// Per-area tallies from one Redelmeier pass, plus level-one class and
// incomplete-figure tallies from the left-factor generator.
struct EnumerationTally {
  int max_area = 0;
  int classify_max_area = 0;
  std::vector<Integer> all;                      // [n-1]
  std::vector<std::vector<Integer>> by_level;    // [n-1][g]: minimal level g (0..n)
  std::vector<Integer> level1_height_sum;        // [n-1]: sum of last-column heights
  std::map<std::pair<int, int>, Integer> level1_by_height;  // (area, last-column height)
  std::map<ClassLabel, std::vector<Integer>> by_class;      // areas <= classify_max_area
  std::vector<Integer> incomplete_level1;        // areas <= classify_max_area

  // Level-m counts: polyominoes whose minimal level is <= m.
  CoefficientTable level(int m) const {
    std::vector<Integer> counts;
    for (int n = 1; n <= max_area; ++n) {
      Integer c = 0;
      for (int g = 0; g <= std::min(m, n); ++g) c += by_level[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(g)];
      counts.push_back(c);
    }
    return {m <= 2 ? model_for_level(m) : Model::all, std::move(counts)};
  }

  CoefficientTable all_table() const { return {Model::all, all}; }
  CoefficientTable incomplete_table() const { return {Model::incomplete_level1, incomplete_level1}; }
};

struct EnumerationOptions {
  int threads = 1;
  int classify_max_area = 0;  // 0 disables classification
};

namespace detail {

struct WorkerTally {
  explicit WorkerTally(int n)
      : all(static_cast<std::size_t>(n), 0),
        by_level(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n + 1), 0)),
        height_sum(static_cast<std::size_t>(n), 0),
        by_height(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n + 1), 0)) {}

  std::vector<std::uint64_t> all;
  std::vector<std::vector<std::uint64_t>> by_level;
  std::vector<std::uint64_t> height_sum;
  std::vector<std::vector<std::uint64_t>> by_height;
  std::map<ClassLabel, std::vector<std::uint64_t>> by_class;
};

inline Integer to_integer(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

}  // namespace detail

inline EnumerationTally enumerate_tallies(int max_area, const EnumerationOptions& opts = {}) {
  detail::check_area(max_area);
  const int threads = std::max(1, opts.threads);
  const int classify_max = std::min(opts.classify_max_area, max_area);

  std::vector<detail::WorkerTally> tallies(static_cast<std::size_t>(threads), detail::WorkerTally(max_area));
  auto work = [&](int part) {
    auto& t = tallies[static_cast<std::size_t>(part)];
    for (ClassLabel l : kAllClassLabels) t.by_class[l].assign(static_cast<std::size_t>(max_area), 0);
    enumerate_polyhexes_part(max_area, part, threads, [&](std::span<const Cell> cells) {
      const auto n = cells.size();
      ++t.all[n - 1];
      const ColumnProfile p = column_profile(cells);
      const int level = minimal_level(p);
      if (level < 0) return;
      ++t.by_level[n - 1][static_cast<std::size_t>(level)];
      if (level > 1) return;
      t.height_sum[n - 1] += static_cast<std::uint64_t>(p.last_height);
      ++t.by_height[n - 1][static_cast<std::size_t>(p.last_height)];
      if (static_cast<int>(n) <= classify_max) {
        const Figure f(std::vector<Cell>(cells.begin(), cells.end()));
        ++t.by_class[classify(f)][n - 1];
      }
    });
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int p = 0; p < threads; ++p)
      pool.emplace_back([&, p] {
        try {
          work(p);
        } catch (...) {
          errors[static_cast<std::size_t>(p)] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  EnumerationTally out;
  out.max_area = max_area;
  out.classify_max_area = classify_max;
  out.all.assign(static_cast<std::size_t>(max_area), 0);
  out.by_level.assign(static_cast<std::size_t>(max_area), std::vector<Integer>(static_cast<std::size_t>(max_area + 1), 0));
  out.level1_height_sum.assign(static_cast<std::size_t>(max_area), 0);
  for (const auto& t : tallies) {
    for (int n = 1; n <= max_area; ++n) {
      const auto i = static_cast<std::size_t>(n - 1);
      out.all[i] += detail::to_integer(t.all[i]);
      out.level1_height_sum[i] += detail::to_integer(t.height_sum[i]);
      for (int g = 0; g <= max_area; ++g) out.by_level[i][static_cast<std::size_t>(g)] += detail::to_integer(t.by_level[i][static_cast<std::size_t>(g)]);
      for (int h = 1; h <= n; ++h) {
        const auto c = t.by_height[i][static_cast<std::size_t>(h)];
        if (c) out.level1_by_height[{n, h}] += detail::to_integer(c);
      }
    }
  }

  if (classify_max > 0) {
    for (ClassLabel l : kAllClassLabels) out.by_class[l].assign(static_cast<std::size_t>(classify_max), 0);
    for (const auto& t : tallies)
      for (const auto& [label, v] : t.by_class)
        for (int n = 1; n <= classify_max; ++n) out.by_class[label][static_cast<std::size_t>(n - 1)] += detail::to_integer(v[static_cast<std::size_t>(n - 1)]);
    out.incomplete_level1.assign(static_cast<std::size_t>(classify_max), 0);
    enumerate_left_factors(classify_max, 1, [&](const Figure& f, Membership mem) {
      if (mem != Membership::incomplete) return;
      const auto n = f.area();
      ++out.incomplete_level1[n - 1];
      ++out.by_class[classify(f)][n - 1];
    });
  }
  return out;
}

// Level-m counts (m in {0, 1, 2}) by exhaustive enumeration.
inline CoefficientTable count_by_model(int max_area, int m, int threads = 1) {
  if (m < 0 || m > 2) throw std::invalid_argument("count_by_model supports levels 0, 1 and 2");
  return enumerate_tallies(max_area, {threads, 0}).level(m);
}

}  // namespace polyhex
