#pragma once

// Column-by-column count of level-m column-subconvex polyhexes (m = 0, 1, 2).
//
// A state is the shape of the last column (one run, or two runs with a gap
// of at most m cells) plus whether its two runs already belong to one
// component of the figure built so far. Two-run columns whose runs are
// still apart ("separate") describe incomplete figures, which a later
// column must reconnect.

#include "polyhex/coefficients.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace polyhex {

struct DpResult {
  CoefficientTable complete;         // level-m polyominoes
  CoefficientTable incomplete;       // disconnected left factors
  std::vector<Integer> height_sum;   // sum of last-column heights over complete figures
};

namespace detail {

struct ColumnShape {
  int lower = 0;  // cells in the lower (or only) run
  int gap = 0;    // 0 for a single run
  int upper = 0;  // cells in the upper run
  int size() const { return lower + upper; }
  int height() const { return lower + gap + upper; }
  bool two_runs() const { return gap > 0; }
};

inline std::vector<ColumnShape> column_shapes(int m, int max_size) {
  std::vector<ColumnShape> out;
  for (int i = 1; i <= max_size; ++i) out.push_back({i, 0, 0});
  for (int g = 1; g <= m; ++g)
    for (int a = 1; a < max_size; ++a)
      for (int b = 1; a + b <= max_size; ++b) out.push_back({a, g, b});
  return out;
}

inline bool overlaps(int lo1, int hi1, int lo2, int hi2) { return std::max(lo1, lo2) <= std::min(hi1, hi2); }

inline Integer to_integer(unsigned __int128 v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}
inline Integer to_integer(const Integer& v) { return v; }

struct CountOverflow {};

inline void accumulate(unsigned __int128& acc, const unsigned __int128& v) {
  if (__builtin_add_overflow(acc, v, &acc)) throw CountOverflow{};
}
inline void accumulate(Integer& acc, const Integer& v) { acc += v; }

inline unsigned __int128 scaled(const unsigned __int128& v, int k) {
  unsigned __int128 r;
  if (__builtin_mul_overflow(v, static_cast<unsigned __int128>(k), &r)) throw CountOverflow{};
  return r;
}
inline Integer scaled(const Integer& v, int k) { return v * k; }

template <typename Count>
DpResult run_column_dp(int m, int max_area, int threads) {
  const auto shapes = column_shapes(m, max_area);
  const int ns = static_cast<int>(shapes.size());
  const int nstates = 2 * ns;  // state = 2 * shape + separate
  const auto N = static_cast<std::size_t>(max_area);

  // counts[n][state], n = 0..max_area
  using Table = std::vector<std::vector<Count>>;
  Table counts(N + 1, std::vector<Count>(static_cast<std::size_t>(nstates), Count(0)));
  for (int s = 0; s < ns; ++s) {
    const auto& sh = shapes[static_cast<std::size_t>(s)];
    counts[static_cast<std::size_t>(sh.size())][static_cast<std::size_t>(2 * s + (sh.two_runs() ? 1 : 0))] += Count(1);
  }

  // shapes are not sorted by size, so index them
  std::vector<std::vector<int>> by_size(N + 1);
  for (int s = 0; s < ns; ++s) by_size[static_cast<std::size_t>(shapes[static_cast<std::size_t>(s)].size())].push_back(s);

  auto advance = [&](int n, int part, int parts, Table& out) {
    const auto& layer = counts[static_cast<std::size_t>(n)];
    for (int st = part; st < nstates; st += parts) {
      const Count& c = layer[static_cast<std::size_t>(st)];
      if (c == Count(0)) continue;
      const auto& old = shapes[static_cast<std::size_t>(st / 2)];
      const bool separate = st % 2 == 1;
      // Old runs as the row ranges a new cell must hit: (x+1, r) touches
      // (x, r) and (x, r+1).
      const int o1lo = -1, o1hi = old.lower - 1;
      const int o2lo = old.lower + old.gap - 1, o2hi = old.height() - 1;
      const bool old_two = old.two_runs();
      const unsigned full = separate ? 3u : 1u;
      const unsigned comp2 = separate ? 2u : 1u;

      for (int size = 1; n + size <= max_area; ++size) {
        auto& target = out[static_cast<std::size_t>(n + size)];
        for (int s : by_size[static_cast<std::size_t>(size)]) {
          const auto& nw = shapes[static_cast<std::size_t>(s)];
          const int h = nw.height();
          for (int p = -h; p <= old.height() - 1; ++p) {
            // new run 1: [p, p + lower - 1]; new run 2: [p + lower + gap, p + h - 1]
            const int a_lo = p, a_hi = p + nw.lower - 1;
            unsigned ma = 0;
            if (overlaps(a_lo, a_hi, o1lo, o1hi)) ma |= 1u;
            if (old_two && overlaps(a_lo, a_hi, o2lo, o2hi)) ma |= comp2;
            if (!nw.two_runs()) {
              if (ma == full) accumulate(target[static_cast<std::size_t>(2 * s)], c);
              continue;
            }
            const int b_lo = p + nw.lower + nw.gap, b_hi = p + h - 1;
            unsigned mb = 0;
            if (overlaps(b_lo, b_hi, o1lo, o1hi)) mb |= 1u;
            if (old_two && overlaps(b_lo, b_hi, o2lo, o2hi)) mb |= comp2;
            if ((ma | mb) != full) continue;
            const bool joined = (ma & mb) != 0;
            accumulate(target[static_cast<std::size_t>(2 * s + (joined ? 0 : 1))], c);
          }
        }
      }
    }
  };

  const int parts = std::max(1, threads);
  for (int n = 1; n < max_area; ++n) {
    if (parts == 1) {
      advance(n, 0, 1, counts);
      continue;
    }
    std::vector<Table> local(static_cast<std::size_t>(parts),
                             Table(N + 1, std::vector<Count>(static_cast<std::size_t>(nstates), Count(0))));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(parts));
    std::vector<std::thread> pool;
    for (int p = 0; p < parts; ++p)
      pool.emplace_back([&, p] {
        try {
          advance(n, p, parts, local[static_cast<std::size_t>(p)]);
        } catch (...) {
          errors[static_cast<std::size_t>(p)] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (const auto& t : local)
      for (std::size_t k = static_cast<std::size_t>(n) + 1; k <= N; ++k)
        for (std::size_t st = 0; st < static_cast<std::size_t>(nstates); ++st) accumulate(counts[k][st], t[k][st]);
  }

  DpResult r;
  r.complete.model = model_for_level(m);
  r.incomplete.model = Model::incomplete_level1;
  for (std::size_t n = 1; n <= N; ++n) {
    Count complete(0), incomplete(0), heights(0);
    for (int st = 0; st < nstates; ++st) {
      const Count& c = counts[n][static_cast<std::size_t>(st)];
      if (c == Count(0)) continue;
      if (st % 2 == 1) {
        accumulate(incomplete, c);
      } else {
        accumulate(complete, c);
        accumulate(heights, scaled(c, shapes[static_cast<std::size_t>(st / 2)].height()));
      }
    }
    r.complete.counts.push_back(to_integer(complete));
    r.incomplete.counts.push_back(to_integer(incomplete));
    r.height_sum.push_back(to_integer(heights));
  }
  return r;
}

}  // namespace detail

// Level-m counts and tallies for areas 1..max_area. The "incomplete" table
// counts incomplete level-m figures; it is the level-one set T when m = 1.
inline DpResult dp_tally(int m, int max_area, int threads = 1) {
  if (m < 0 || m > 2) throw std::invalid_argument("the column DP supports levels 0, 1 and 2");
  if (max_area < 1) throw std::invalid_argument("max_area must be at least 1");
  // Fixed-width counting with overflow checks; exact integers if it overflows.
  try {
    return detail::run_column_dp<unsigned __int128>(m, max_area, threads);
  } catch (const detail::CountOverflow&) {
    return detail::run_column_dp<Integer>(m, max_area, threads);
  }
}

inline CoefficientTable dp_count_subconvex(int m, int max_area, int threads = 1) {
  return dp_tally(m, max_area, threads).complete;
}

}  // namespace polyhex
