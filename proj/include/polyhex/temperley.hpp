#pragma once

// The level-one functional equations as a 6x6 linear system over the
// truncated series ring, its solution, and the series rebuilt from it:
// D(u), A(q, t), and the eleven per-class parts.

#include "polyhex/closedform.hpp"
#include "polyhex/qseries.hpp"

#include <array>
#include <string_view>
#include <utility>

namespace polyhex {

// Unknown order in the system.
enum Unknown : int { kA1 = 0, kB1, kC1, kDq, kDprimeQ, kF, kUnknowns };

inline constexpr std::array<std::string_view, kUnknowns> kUnknownNames = {"A1", "B1", "C1", "D(q)", "D'(q)", "F"};

struct SeriesLinearSystem {
  int order = 0;
  std::array<std::array<TruncatedSeries, kUnknowns>, kUnknowns> matrix;
  std::array<TruncatedSeries, kUnknowns> rhs;
};

struct SolvedSeries {
  TruncatedSeries A1, B1, C1, Dq, Dprime_q, F;

  const TruncatedSeries& operator[](int u) const {
    switch (u) {
      case kA1: return A1;
      case kB1: return B1;
      case kC1: return C1;
      case kDq: return Dq;
      case kDprimeQ: return Dprime_q;
      default: return F;
    }
  }
  int order() const { return A1.order(); }
};

namespace detail {

// Polynomial numerator over (1 - q)^k.
inline TruncatedSeries over_one_minus_q(int order, std::initializer_list<long> numerator, int k) {
  TruncatedSeries s = TruncatedSeries::polynomial(order, numerator);
  for (int i = 0; i < k; ++i) s.mul_geom(1);
  return s;
}

}  // namespace detail

// Each equation is stored as  sum_j matrix[i][j] * x_j = rhs[i]  with all
// unknowns moved to the left. Rows, in order: the t = 1 specialisation of
// A(q, t); its t-derivative at t = 1; C1 from D(u) at u = 1; the
// definition of F; D(q); D'(q).
inline SeriesLinearSystem build_system(int N) {
  if (N < 6) throw SeriesError("system order must be at least 6");
  using detail::over_one_minus_q;
  const int M = N;
  SeriesLinearSystem sys;
  sys.order = M;
  for (auto& row : sys.matrix)
    for (auto& e : row) e = TruncatedSeries(M);
  for (auto& r : sys.rhs) r = TruncatedSeries(M);
  const auto one = TruncatedSeries::constant(M, 1);
  const ThetaSums th = theta_sums(M);

  // A1 = q/(1-q) + q/(1-q)^2 A1 + q/(1-q) B1 + q^2/(1-q)^2 (B1 - A1)
  //    + q^2/(1-q)^2 C1 + 2q^3/(1-q)^3 C1 - 2q^2/(1-q)^3 D(q)
  {
    auto& row = sys.matrix[0];
    const auto q_11 = over_one_minus_q(M, {0, 1}, 1);
    const auto q_12 = over_one_minus_q(M, {0, 1}, 2);
    const auto q2_12 = over_one_minus_q(M, {0, 0, 1}, 2);
    row[kA1] = one - q_12 + q2_12;
    row[kB1] = -(q_11 + q2_12);
    row[kC1] = -(q2_12 + over_one_minus_q(M, {0, 0, 0, 2}, 3));
    row[kDq] = over_one_minus_q(M, {0, 0, 2}, 3);
    sys.rhs[0] = q_11;
  }
  // B1 = q/(1-q)^2 + (q+q^2)/(1-q)^3 A1 + q/(1-q)^2 B1 + (3q^2-q^3)/(1-q)^3 (B1 - A1)
  //    + 2q^2/(1-q)^3 C1 + (8q^3-2q^4)/(1-q)^4 C1 - 6q^2/(1-q)^4 D(q) - 2q^3/(1-q)^3 D'(q)
  {
    auto& row = sys.matrix[1];
    const auto delta_coeff = over_one_minus_q(M, {0, 0, 3, -1}, 3);
    row[kA1] = -over_one_minus_q(M, {0, 1, 1}, 3) + delta_coeff;
    row[kB1] = one - over_one_minus_q(M, {0, 1}, 2) - delta_coeff;
    row[kC1] = -(over_one_minus_q(M, {0, 0, 2}, 3) + over_one_minus_q(M, {0, 0, 0, 8, -2}, 4));
    row[kDq] = over_one_minus_q(M, {0, 0, 6}, 4);
    row[kDprimeQ] = over_one_minus_q(M, {0, 0, 0, 2}, 3);
    sys.rhs[1] = over_one_minus_q(M, {0, 1}, 2);
  }
  // C1 = q^2/(1-q)^2 + (4q^2-2q^3)/(1-q)^3 A1 + 2q^2/(1-q)^2 C1 + 2q^2/(1-q)^3 D(q)
  {
    auto& row = sys.matrix[2];
    row[kA1] = -over_one_minus_q(M, {0, 0, 4, -2}, 3);
    row[kC1] = one - over_one_minus_q(M, {0, 0, 2}, 2);
    row[kDq] = -over_one_minus_q(M, {0, 0, 2}, 3);
    sys.rhs[2] = over_one_minus_q(M, {0, 0, 1}, 2);
  }
  // F = 1 + (3-2q)/(1-q) A1 + 2 C1 + 1/(1-q) D(q)
  {
    auto& row = sys.matrix[3];
    row[kA1] = -over_one_minus_q(M, {3, -2}, 1);
    row[kC1] = TruncatedSeries::constant(M, -2);
    row[kDq] = -over_one_minus_q(M, {1}, 1);
    row[kF] = one;
    sys.rhs[3] = one;
  }
  // D(q) = alpha A1 + beta F
  {
    auto& row = sys.matrix[4];
    row[kA1] = -th.alpha;
    row[kDq] = one;
    row[kF] = -th.beta;
  }
  // D'(q) = gamma A1 + delta F
  {
    auto& row = sys.matrix[5];
    row[kA1] = -th.gamma;
    row[kDprimeQ] = one;
    row[kF] = -th.delta;
  }
  return sys;
}

class SolveError : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

// Gauss-Jordan elimination over the series ring. Pivots are chosen with a
// nonzero constant term; failing that, the entry of least valuation, whose
// division then costs precision (reflected in the result orders).
inline std::array<TruncatedSeries, kUnknowns> solve_linear(SeriesLinearSystem sys) {
  auto& a = sys.matrix;
  auto& b = sys.rhs;
  for (int col = 0; col < kUnknowns; ++col) {
    int pivot = -1, best_val = 0;
    for (int r = col; r < kUnknowns; ++r) {
      const auto v = a[r][col].valuation();
      if (!v) continue;
      if (pivot < 0 || *v < best_val) {
        pivot = r;
        best_val = *v;
      }
      if (*v == 0) break;
    }
    if (pivot < 0) throw SolveError("singular system: no pivot in column " + std::to_string(col));
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);

    const TruncatedSeries p = a[col][col];
    for (int j = 0; j < kUnknowns; ++j) a[col][j] = div(a[col][j], p);
    b[col] = div(b[col], p);
    for (int r = 0; r < kUnknowns; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const TruncatedSeries f = a[r][col];
      for (int j = 0; j < kUnknowns; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

// Built at order N + 2 and reported at order N.
inline SolvedSeries solve_system(const SeriesLinearSystem& sys, int N) {
  if (N > sys.order) throw SolveError("requested order exceeds the system order");
  const auto x = solve_linear(sys);
  for (const auto& s : x)
    if (s.order() < N) throw SolveError("precision loss below the requested order");
  return {x[kA1].truncated(N), x[kB1].truncated(N), x[kC1].truncated(N),
          x[kDq].truncated(N), x[kDprimeQ].truncated(N), x[kF].truncated(N)};
}

inline SolvedSeries solve_system(int N) { return solve_system(build_system(N + 2), N); }

// Left side minus right side for every equation, evaluated at `x`.
inline std::array<TruncatedSeries, kUnknowns> residuals(const SeriesLinearSystem& sys, const SolvedSeries& x) {
  std::array<TruncatedSeries, kUnknowns> out;
  for (int i = 0; i < kUnknowns; ++i) {
    TruncatedSeries lhs(std::min(sys.order, x.order()));
    for (int j = 0; j < kUnknowns; ++j) lhs += sys.matrix[i][j] * x[j];
    out[i] = lhs - sys.rhs[i];
  }
  return out;
}

// D(u) stored under u -> q t, i.e. the series D(q t):
//
//   sum_i q^{i(i+3)/2} u^i / ((1-q)^i prod_{k<=i} (1-q^k u)^2) * A1
// + sum_i q^{i(i+3)/2} u^i / ((1-q)^i prod_{k<i} (1-q^k u)^2 (1-q^i u)) * F
//
// Each u carries one q, so term i starts at q^{i(i+5)/2}.
inline BivariateSeries d_series(const SolvedSeries& s, int N) {
  if (s.order() < N) throw SeriesError("solution order below requested order");
  BivariateSeries a_part(N), f_part(N);
  for (int i = 1; theta_exponent(i) <= N; ++i) {
    TruncatedSeries lead = TruncatedSeries::monomial(N, theta_exponent(i));
    for (int k = 0; k < i; ++k) lead.mul_geom(1);
    BivariateSeries base = BivariateSeries::times_monomial(lead, 0, i);
    for (int k = 1; k < i; ++k) base.mul_geom_qt(k + 1).mul_geom_qt(k + 1);
    base.mul_geom_qt(i + 1);
    f_part += base;
    base.mul_geom_qt(i + 1);
    a_part += base;
  }
  return a_part * s.A1.truncated(N) + f_part * s.F.truncated(N);
}

// Residual of  D(u) = q^2u/((1-q)(1-qu)^2) A1 + q^2u/((1-q)(1-qu)) F + q^2u/((1-q)(1-qu)^2) D(qu)
// under u -> q t.
inline BivariateSeries d_functional_residual(const BivariateSeries& d, const SolvedSeries& s) {
  const int N = d.order();
  TruncatedSeries lead = TruncatedSeries::monomial(N, 3);  // q^2 * (one q from u)
  lead.mul_geom(1);
  BivariateSeries k1 = BivariateSeries::times_monomial(lead, 0, 1);  // q^3 t / (1-q)
  k1.mul_geom_qt(2);
  BivariateSeries k2 = k1;  // ... / (1 - q^2 t)
  k2.mul_geom_qt(2);        // ... / (1 - q^2 t)^2
  BivariateSeries rhs = k2 * s.A1.truncated(N) + k1 * s.F.truncated(N) + k2 * d.t_scaled_by_q();
  return d - rhs;
}

// A(q, t) by last-column height:
//   qt/(1-qt) + qt/(1-qt)^2 A1 + qt/(1-qt) B1 + q^2t^3/(1-qt)^2 (B1 - A1)
// + q^2t^2/(1-qt)^2 C1 + 2q^3t^4/(1-qt)^3 C1 - 2q^2t^3/(1-qt)^3 D(qt)
inline BivariateSeries assemble_A(const SolvedSeries& s, int N) {
  if (s.order() < N) throw SeriesError("solution order below requested order");
  const auto A1 = s.A1.truncated(N), B1 = s.B1.truncated(N), C1 = s.C1.truncated(N);
  const auto one = TruncatedSeries::constant(N, 1);
  auto geom_qt = [](BivariateSeries x, int power) {
    for (int i = 0; i < power; ++i) x.mul_geom_qt(1);
    return x;
  };
  BivariateSeries out = geom_qt(BivariateSeries::times_monomial(one, 1, 1), 1);
  out += geom_qt(BivariateSeries::times_monomial(A1, 1, 1), 2);
  out += geom_qt(BivariateSeries::times_monomial(B1, 1, 1), 1);
  out += geom_qt(BivariateSeries::times_monomial(B1 - A1, 2, 3), 2);
  out += geom_qt(BivariateSeries::times_monomial(C1, 2, 2), 2);
  out += geom_qt(BivariateSeries::times_monomial(C1 * Rational(2), 3, 4), 3);
  // -2 q^2 t^3 / (1-qt)^3 D(qt): D(qt) has t-degree at most half its q-degree,
  // so the product stays triangular.
  const BivariateSeries d = d_series(s, N);
  BivariateSeries shifted(N);
  for (int n = 0; n + 2 <= N; ++n)
    for (int k = 0; k <= n; ++k)
      if (sgn(d(n, k)) != 0) {
        if (k + 3 > n + 2) throw SeriesError("D(qt) term outside the triangular layout");
        shifted(n + 2, k + 3) = d(n, k) * -2;
      }
  out += geom_qt(shifted, 3);
  return out;
}

// Generating functions of the eleven level-one classes at t = 1 (S-parts)
// and u = v = 1 (T-parts), in ClassLabel order.
struct PartSeries {
  std::array<TruncatedSeries, 6> complete;    // alpha .. zeta
  std::array<TruncatedSeries, 5> incomplete;  // alpha .. epsilon
};

inline PartSeries part_series(const SolvedSeries& s, int N) {
  using detail::over_one_minus_q;
  const auto A1 = s.A1.truncated(N), B1 = s.B1.truncated(N), C1 = s.C1.truncated(N), Dq = s.Dq.truncated(N);
  PartSeries p;
  p.complete[0] = over_one_minus_q(N, {0, 1}, 1);
  p.complete[1] = over_one_minus_q(N, {0, 1}, 2) * A1;
  p.complete[2] = over_one_minus_q(N, {0, 1}, 1) * B1;
  p.complete[3] = over_one_minus_q(N, {0, 0, 1}, 2) * (B1 - A1);
  p.complete[4] = over_one_minus_q(N, {0, 0, 1}, 2) * C1;
  p.complete[5] = over_one_minus_q(N, {0, 0, 0, 2}, 3) * C1 - over_one_minus_q(N, {0, 0, 2}, 3) * Dq;
  p.incomplete[0] = over_one_minus_q(N, {0, 0, 1}, 2);
  p.incomplete[1] = over_one_minus_q(N, {0, 0, 2}, 2) * A1;
  p.incomplete[2] = over_one_minus_q(N, {0, 0, 2}, 3) * A1;
  p.incomplete[3] = over_one_minus_q(N, {0, 0, 2}, 2) * C1;
  p.incomplete[4] = over_one_minus_q(N, {0, 0, 2}, 3) * Dq;
  return p;
}

}  // namespace polyhex
