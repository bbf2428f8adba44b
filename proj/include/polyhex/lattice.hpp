#pragma once

// Hexagonal-lattice cells in column coordinates, figures, column
// decomposition, and the level-m membership and class predicates.
//
// Columns are vertical. Cell (x, y) sits in column x at position y; its
// right neighbours are (x+1, y) (upper right) and (x+1, y-1) (lower right).

#include <json.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyhex {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyFigureError : public LatticeError {
 public:
  EmptyFigureError() : LatticeError("empty figure") {}
};

struct Cell {
  int col = 0;
  int row = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Cell& c) {
  return os << "(" << c.col << "," << c.row << ")";
}

constexpr std::array<Cell, 6> neighbors(Cell c) {
  return {Cell{c.col, c.row + 1}, Cell{c.col, c.row - 1},     Cell{c.col + 1, c.row},
          Cell{c.col + 1, c.row - 1}, Cell{c.col - 1, c.row}, Cell{c.col - 1, c.row + 1}};
}

constexpr bool adjacent(Cell a, Cell b) {
  for (Cell n : neighbors(a))
    if (n == b) return true;
  return false;
}

constexpr Cell upper_right(Cell c) { return {c.col + 1, c.row}; }
constexpr Cell lower_right(Cell c) { return {c.col + 1, c.row - 1}; }

// A maximal vertical run of cells, or a gap between two runs.
struct Run {
  int bottom = 0;
  int length = 0;

  int top() const { return bottom + length - 1; }
  friend bool operator==(const Run&, const Run&) = default;
};

struct Column {
  int col = 0;
  std::vector<Run> runs;  // bottom to top
  std::vector<Run> gaps;  // gaps[i] lies between runs[i] and runs[i+1]

  int bottom() const { return runs.front().bottom; }
  int top() const { return runs.back().top(); }
  int height() const { return top() - bottom() + 1; }
  int cell_count() const {
    int n = 0;
    for (const auto& r : runs) n += r.length;
    return n;
  }
  bool has_hole() const { return runs.size() > 1; }
};

using ColumnDecomposition = std::vector<Column>;

// A finite non-empty cell set, held as a sorted translation representative:
// minimum column 0 and minimum row (over all cells) 0.
class Figure {
 public:
  explicit Figure(std::vector<Cell> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) throw EmptyFigureError();
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    int min_col = cells_.front().col, min_row = cells_.front().row;
    for (const auto& c : cells_) {
      min_col = std::min(min_col, c.col);
      min_row = std::min(min_row, c.row);
    }
    for (auto& c : cells_) {
      c.col -= min_col;
      c.row -= min_row;
    }
  }

  Figure(std::initializer_list<Cell> cells) : Figure(std::vector<Cell>(cells)) {}

  std::span<const Cell> cells() const { return cells_; }
  std::size_t area() const { return cells_.size(); }

  bool contains(Cell c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

  int column_count() const { return cells_.back().col + 1; }

  friend bool operator==(const Figure&, const Figure&) = default;
  friend auto operator<=>(const Figure& a, const Figure& b) { return a.cells_ <=> b.cells_; }

 private:
  std::vector<Cell> cells_;
};

inline ColumnDecomposition columns(const Figure& f) {
  ColumnDecomposition out;
  for (const Cell& c : f.cells()) {
    if (out.empty() || out.back().col != c.col) {
      out.push_back(Column{c.col, {Run{c.row, 1}}, {}});
      continue;
    }
    Column& col = out.back();
    Run& last = col.runs.back();
    if (c.row == last.top() + 1) {
      ++last.length;
    } else {
      col.gaps.push_back(Run{last.top() + 1, c.row - last.top() - 1});
      col.runs.push_back(Run{c.row, 1});
    }
  }
  return out;
}

inline bool is_polyomino(const Figure& f) {
  const auto cells = f.cells();
  std::vector<char> seen(cells.size(), 0);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const Cell c = cells[todo.front()];
    todo.pop();
    for (Cell n : neighbors(c)) {
      auto it = std::lower_bound(cells.begin(), cells.end(), n);
      if (it == cells.end() || *it != n) continue;
      const auto idx = static_cast<std::size_t>(it - cells.begin());
      if (seen[idx]) continue;
      seen[idx] = 1;
      ++reached;
      todo.push(idx);
    }
  }
  return reached == cells.size();
}

// Every column has at most two runs and any gap has at most m cells.
inline bool columns_within_level(const ColumnDecomposition& cols, int m) {
  for (const auto& c : cols) {
    if (c.runs.size() > 2) return false;
    if (c.runs.size() == 2 && c.gaps.front().length > m) return false;
  }
  return true;
}

inline bool is_level_m_subconvex(const Figure& f, int m) {
  if (m < 0) throw LatticeError("level must be non-negative");
  if (!is_polyomino(f)) throw LatticeError("figure is not a polyomino");
  const auto cols = columns(f);
  if (m == 0) {
    return std::all_of(cols.begin(), cols.end(), [](const Column& c) { return !c.has_hole(); });
  }
  return columns_within_level(cols, m);
}

inline bool is_column_convex(const Figure& f) { return is_level_m_subconvex(f, 0); }

// Right neighbours of the gap cells of the last column. Empty when the
// last column has no gap.
inline std::vector<Cell> cork(const Figure& f) {
  const auto cols = columns(f);
  const Column& last = cols.back();
  std::vector<Cell> out;
  if (!last.has_hole()) return out;
  const Run& gap = last.gaps.front();
  for (int r = gap.bottom - 1; r <= gap.top(); ++r) out.push_back({last.col + 1, r});
  return out;
}

inline Figure with_cells(const Figure& f, std::span<const Cell> extra) {
  std::vector<Cell> cells(f.cells().begin(), f.cells().end());
  cells.insert(cells.end(), extra.begin(), extra.end());
  return Figure(std::move(cells));
}

// Disconnected left factor of a level-m column-subconvex polyomino.
inline bool is_incomplete_level_m(const Figure& f, int m) {
  if (m < 1) return false;
  const auto cols = columns(f);
  if (!columns_within_level(cols, m)) return false;
  if (is_polyomino(f)) return false;
  const auto plug = cork(f);
  if (plug.empty()) return false;
  const Figure corked = with_cells(f, plug);
  return is_polyomino(corked) && columns_within_level(columns(corked), m);
}

enum class Membership { complete, incomplete, neither };

inline Membership membership(const Figure& f, int m) {
  if (is_polyomino(f)) {
    return is_level_m_subconvex(f, m) ? Membership::complete : Membership::neither;
  }
  return is_incomplete_level_m(f, m) ? Membership::incomplete : Membership::neither;
}

// All columns except the last. Requires at least two columns.
inline Figure body(const Figure& f) {
  if (f.column_count() < 2) throw LatticeError("single-column figure has no body");
  const int last = f.column_count() - 1;
  std::vector<Cell> cells;
  for (const Cell& c : f.cells())
    if (c.col != last) cells.push_back(c);
  return Figure(std::move(cells));
}

namespace detail {

inline const Column& second_last_column(const ColumnDecomposition& cols) {
  if (cols.size() < 2) throw LatticeError("pivot cells need at least two columns");
  return cols[cols.size() - 2];
}

}  // namespace detail

// Lower right neighbour of the lowest cell of the second last column.
// The result need not belong to f.
inline Cell pivot_cell(const Figure& f) {
  const auto cols = columns(f);
  const Column& c = detail::second_last_column(cols);
  if (!is_polyomino(f)) throw LatticeError("pivot cell is defined for complete figures");
  return lower_right(Cell{c.col, c.bottom()});
}

inline Cell lower_pivot_cell(const Figure& f) {
  const auto cols = columns(f);
  const Column& c = detail::second_last_column(cols);
  if (is_polyomino(f)) throw LatticeError("lower pivot cell is defined for incomplete figures");
  return lower_right(Cell{c.col, c.bottom()});
}

// Upper right neighbour of the highest cell of the second last column.
inline Cell upper_pivot_cell(const Figure& f) {
  const auto cols = columns(f);
  const Column& c = detail::second_last_column(cols);
  if (is_polyomino(f)) throw LatticeError("upper pivot cell is defined for incomplete figures");
  return upper_right(Cell{c.col, c.top()});
}

enum class ClassLabel {
  S_alpha,
  S_beta,
  S_gamma,
  S_delta,
  S_epsilon,
  S_zeta,
  T_alpha,
  T_beta,
  T_gamma,
  T_delta,
  T_epsilon,
};

inline constexpr std::array<ClassLabel, 11> kAllClassLabels = {
    ClassLabel::S_alpha, ClassLabel::S_beta,  ClassLabel::S_gamma, ClassLabel::S_delta,
    ClassLabel::S_epsilon, ClassLabel::S_zeta, ClassLabel::T_alpha, ClassLabel::T_beta,
    ClassLabel::T_gamma, ClassLabel::T_delta, ClassLabel::T_epsilon};

constexpr std::string_view to_string(ClassLabel l) {
  switch (l) {
    case ClassLabel::S_alpha: return "S_alpha";
    case ClassLabel::S_beta: return "S_beta";
    case ClassLabel::S_gamma: return "S_gamma";
    case ClassLabel::S_delta: return "S_delta";
    case ClassLabel::S_epsilon: return "S_epsilon";
    case ClassLabel::S_zeta: return "S_zeta";
    case ClassLabel::T_alpha: return "T_alpha";
    case ClassLabel::T_beta: return "T_beta";
    case ClassLabel::T_gamma: return "T_gamma";
    case ClassLabel::T_delta: return "T_delta";
    case ClassLabel::T_epsilon: return "T_epsilon";
  }
  return "?";
}

constexpr bool is_complete_class(ClassLabel l) { return static_cast<int>(l) <= static_cast<int>(ClassLabel::S_zeta); }

// Level-one case split used to derive the functional equations.
inline ClassLabel classify(const Figure& f) {
  const Membership mem = membership(f, 1);
  if (mem == Membership::neither) throw LatticeError("figure is neither complete nor incomplete at level one");
  const bool complete = mem == Membership::complete;
  const auto cols = columns(f);
  if (cols.size() == 1) return complete ? ClassLabel::S_alpha : ClassLabel::T_alpha;

  const Membership body_mem = membership(body(f), 1);
  if (body_mem == Membership::neither) throw LatticeError("body is not a left factor");
  const bool body_complete = body_mem == Membership::complete;
  const Column& last = cols.back();
  const Column& prev = cols[cols.size() - 2];

  if (complete) {
    if (!body_complete) return last.has_hole() ? ClassLabel::S_zeta : ClassLabel::S_epsilon;
    if (last.has_hole()) return ClassLabel::S_delta;
    return f.contains(pivot_cell(f)) ? ClassLabel::S_beta : ClassLabel::S_gamma;
  }

  const int hole = last.gaps.front().bottom;
  if (body_complete) {
    const int lower = lower_right(Cell{prev.col, prev.bottom()}).row;
    const int upper = upper_right(Cell{prev.col, prev.top()}).row;
    if (hole == lower || hole == upper) return ClassLabel::T_beta;
    if (hole < lower || hole > upper) return ClassLabel::T_gamma;
    throw LatticeError("incomplete figure with hole strictly between the pivot cells");
  }
  const int prev_hole = prev.gaps.front().bottom;
  const bool touches = hole == prev_hole || hole == prev_hole - 1;
  return touches ? ClassLabel::T_delta : ClassLabel::T_epsilon;
}

// Mirror images. Vertical-axis reflection maps (x, y) to (-x, y + x);
// horizontal-axis reflection maps (x, y) to (x, -y - x).
inline Figure reflect_vertical(const Figure& f) {
  std::vector<Cell> cells;
  for (const Cell& c : f.cells()) cells.push_back({-c.col, c.row + c.col});
  return Figure(std::move(cells));
}

inline Figure reflect_horizontal(const Figure& f) {
  std::vector<Cell> cells;
  for (const Cell& c : f.cells()) cells.push_back({c.col, -c.row - c.col});
  return Figure(std::move(cells));
}

// JSON: sorted list of [col, row] pairs.
inline nlohmann::json to_json(const Figure& f) {
  auto out = nlohmann::json::array();
  for (const Cell& c : f.cells()) out.push_back({c.col, c.row});
  return out;
}

inline Figure figure_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw LatticeError("figure JSON must be an array of [col,row] pairs");
  std::vector<Cell> cells;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw LatticeError("figure JSON entries must be [col,row] integer pairs");
    cells.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  return Figure(std::move(cells));
}

}  // namespace polyhex
