#pragma once

// The closed form of the level-one area generating function: the four
// q-series alpha, beta, gamma, delta, the numerator and denominator built
// from them, and certified interval evaluation of both for 0 <= x < 1.

#include "polyhex/closed_form_table.hpp"
#include "polyhex/interval.hpp"
#include "polyhex/qseries.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

namespace polyhex {

struct ThetaSums {
  TruncatedSeries alpha, beta, gamma, delta;
};

// Exponent of q in the i-th term of every sum.
constexpr int theta_exponent(int i) { return i * (i + 5) / 2; }

// Sums to order N. The i-th term of gamma and delta carries a factor i/q,
// so terms are kept while their exponent is at most N + 1.
inline ThetaSums theta_sums(int N) {
  if (N < 3) throw SeriesError("theta sums need order >= 3");
  const int W = N + 1;
  ThetaSums out{TruncatedSeries(W), TruncatedSeries(W), TruncatedSeries(W), TruncatedSeries(W)};
  // inner(i) = sum_{j=1}^{i} q^j / (1 - q^{j+1})
  TruncatedSeries inner(W);
  for (int i = 1; theta_exponent(i) <= W; ++i) {
    TruncatedSeries prev_inner = inner;
    TruncatedSeries t = TruncatedSeries::monomial(W, i);
    t.mul_geom(i + 1);
    inner += t;

    // q^{i(i+5)/2} / ((1-q)^i prod_{k<i} (1-q^{k+1})^2)
    TruncatedSeries base = TruncatedSeries::monomial(W, theta_exponent(i));
    for (int k = 0; k < i; ++k) base.mul_geom(1);
    for (int k = 1; k < i; ++k) base.mul_geom(k + 1).mul_geom(k + 1);

    TruncatedSeries beta_i = base;
    beta_i.mul_geom(i + 1);
    TruncatedSeries alpha_i = beta_i;
    alpha_i.mul_geom(i + 1);

    // alpha_i * (i/q + 2 inner(i))
    TruncatedSeries gamma_i = (alpha_i * Rational(i)).shifted_down(1);
    gamma_i += alpha_i * (inner * Rational(2));

    // beta_i * (i/q + 2 inner(i-1) + q^i/(1-q^{i+1}))
    TruncatedSeries delta_i = (beta_i * Rational(i)).shifted_down(1);
    delta_i += beta_i * (prev_inner * Rational(2) + t);

    out.alpha += alpha_i;
    out.beta += beta_i;
    out.gamma += gamma_i;
    out.delta += delta_i;
  }
  return {out.alpha.truncated(N), out.beta.truncated(N), out.gamma.truncated(N), out.delta.truncated(N)};
}

struct ClosedForm {
  ThetaSums sums;
  TruncatedSeries num, den;
};

namespace detail {

template <typename Value, typename Sums>
Value multiplier_value(closed_form_table::Multiplier m, const Sums& s, const Value& one) {
  using closed_form_table::Multiplier;
  switch (m) {
    case Multiplier::one: return one;
    case Multiplier::alpha: return s.alpha;
    case Multiplier::beta: return s.beta;
    case Multiplier::gamma: return s.gamma;
    case Multiplier::delta: return s.delta;
    case Multiplier::alpha_delta_minus_beta_gamma: return s.alpha * s.delta - s.beta * s.gamma;
  }
  throw std::logic_error("unknown multiplier");
}

}  // namespace detail

inline ClosedForm closed_form(int N) {
  ClosedForm cf{theta_sums(N), TruncatedSeries(N), TruncatedSeries(N)};
  const auto one = TruncatedSeries::constant(N, 1);
  for (const auto& term : closed_form_table::numerator())
    cf.num += TruncatedSeries::from_range(N, term.coeffs) *
              detail::multiplier_value(term.multiplier, cf.sums, one);
  for (const auto& term : closed_form_table::denominator())
    cf.den += TruncatedSeries::from_range(N, term.coeffs) *
              detail::multiplier_value(term.multiplier, cf.sums, one);
  return cf;
}

// Level-one area generating function to order N.
inline TruncatedSeries a1_closed(int N) {
  if (N < 1) throw SeriesError("order must be at least 1");
  const ClosedForm cf = closed_form(std::max(N, 3));
  return div(cf.num, cf.den).truncated(N);
}

// ---------------------------------------------------------------------------
// Certified evaluation.

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ThetaIntervals {
  Interval alpha, beta, gamma, delta;
  int terms = 0;  // number of summed terms before the tail bound
};

inline constexpr int kMaxThetaTerms = 100000;

// Encloses alpha, beta, gamma, delta at the point x, 0 <= x < 1. Terms are
// summed until a geometric majorant bounds every tail by 2^-prec: for
// i >= I the term ratio of alpha and beta is at most
// x^{I+3} / ((1-x)(1-x^{I+1})^2), and that of gamma and delta at most this
// times 1 + (1 + 2x^2/(1-x)) / I.
inline ThetaIntervals eval_theta_sums(const Real& x, mpfr_prec_t prec) {
  if (x.sign() < 0 || !(x < Real(1.0, 2))) throw EvaluationError("theta sums need 0 <= x < 1");
  const Interval zero = Interval::integer(0L, prec);
  if (x.sign() == 0) return {zero, zero, zero, zero, 0};

  const Interval X = Interval::point(x, prec);
  const Interval one = Interval::integer(1L, prec);
  const Interval two = Interval::integer(2L, prec);
  const Interval one_minus_x = one - X;
  const Interval inv_x = one / X;
  // 1 + 2x^2/(1-x)
  const Interval factor_slope = one + two * X * X / one_minus_x;

  Interval alpha = zero, beta = zero, gamma = zero, delta = zero;
  Interval x_pow = X;                  // x^i, refreshed each step
  Interval exp_pow = one;              // x^{i(i+5)/2}
  Interval prefix = one;               // (1-x)^{i-1} prod_{k<i} (1-x^{k+1})^2
  Interval inner = zero;               // sum_{j<=i} x^j / (1 - x^{j+1})
  Real threshold(prec);
  mpfr_set_ui_2exp(threshold.get(), 1, -prec, MPFR_RNDD);

  for (int i = 1; i <= kMaxThetaTerms; ++i) {
    if (i > 1) x_pow *= X;
    const Interval x_next = x_pow * X;      // x^{i+1}
    const Interval x_step = x_next * X;     // x^{i+2}
    exp_pow *= x_step;                      // x^{i(i+5)/2} = x^{(i-1)(i+4)/2} * x^{i+2}
    const Interval one_minus_next = one - x_next;
    const Interval prev_inner = inner;
    const Interval last = x_pow / one_minus_next;
    inner += last;

    const Interval beta_den = prefix * one_minus_x * one_minus_next;
    const Interval alpha_den = beta_den * one_minus_next;
    const Interval beta_i = exp_pow / beta_den;
    const Interval alpha_i = exp_pow / alpha_den;
    const Interval i_over_x = Interval::integer(static_cast<long>(i), prec) * inv_x;
    const Interval gamma_i = alpha_i * (i_over_x + two * inner);
    const Interval delta_i = beta_i * (i_over_x + two * prev_inner + last);
    prefix = alpha_den;

    alpha += alpha_i;
    beta += beta_i;
    gamma += gamma_i;
    delta += delta_i;

    // Ratio bound for terms i+1, i+2, ... relative to term i.
    const Interval ratio = x_pow * X * X * X / (one_minus_x * one_minus_next * one_minus_next);
    const Interval ratio_gd =
        ratio * (one + factor_slope / Interval::integer(static_cast<long>(i), prec));
    if (!(ratio_gd.hi() < Real(0.5, 2))) continue;

    // tail <= t_i * r / (1 - r) <= 2 t_i r for r <= 1/2
    auto tail = [&](const Interval& t, const Interval& r) {
      Real b(prec);
      mpfr_mul(b.get(), t.hi().get(), r.hi().get(), MPFR_RNDU);
      mpfr_mul_2ui(b.get(), b.get(), 1, MPFR_RNDU);
      return b;
    };
    Real ta = tail(alpha_i, ratio), tb = tail(beta_i, ratio);
    Real tg = tail(gamma_i, ratio_gd), td = tail(delta_i, ratio_gd);
    if (ta <= threshold && tb <= threshold && tg <= threshold && td <= threshold) {
      return {alpha.plus_upper(ta), beta.plus_upper(tb), gamma.plus_upper(tg), delta.plus_upper(td), i};
    }
  }
  throw EvaluationError("theta-sum tail bound did not converge");
}

namespace detail {

template <std::size_t K>
Interval eval_closed_form_part(const std::array<closed_form_table::Term, K>& terms, const ThetaIntervals& s,
                               const Interval& X) {
  const Interval one = Interval::integer(1L, X.precision());
  Interval acc = Interval::integer(0L, X.precision());
  for (const auto& term : terms)
    acc += eval_polynomial(term.coeffs, X) * multiplier_value(term.multiplier, s, one);
  return acc;
}

}  // namespace detail

// Interval certainly containing the denominator at x, 0 <= x <= 1/2.
inline Interval eval_denominator(const Real& x, mpfr_prec_t prec) {
  if (x.sign() < 0 || Real(0.5, 2) < x) throw EvaluationError("denominator evaluation needs 0 <= x <= 1/2");
  const auto sums = eval_theta_sums(x, prec);
  return detail::eval_closed_form_part(closed_form_table::denominator(), sums, Interval::point(x, prec));
}

// Interval certainly containing the numerator at x, 0 <= x < 1.
inline Interval eval_numerator(const Real& x, mpfr_prec_t prec) {
  const auto sums = eval_theta_sums(x, prec);
  return detail::eval_closed_form_part(closed_form_table::numerator(), sums, Interval::point(x, prec));
}

inline constexpr mpfr_prec_t kMinPrecision = 64;
inline constexpr mpfr_prec_t kMaxPrecision = 1024;

// Denominator enclosure of width <= target, raising precision 64, 128, ...
// up to 1024 bits.
inline Interval eval_denominator_to_width(const Real& x, const Real& target) {
  for (mpfr_prec_t prec = kMinPrecision; prec <= kMaxPrecision; prec *= 2) {
    Interval v = eval_denominator(x, prec);
    if (v.width() <= target) return v;
  }
  throw EvaluationError("precision cap reached before the target width");
}

// Truncated series evaluated at x in interval arithmetic (no tail term).
inline Interval eval_truncated(const TruncatedSeries& s, const Real& x, mpfr_prec_t prec) {
  const Interval X = Interval::point(x, prec);
  Interval acc = Interval::integer(0L, prec);
  for (int n = s.order(); n >= 0; --n) acc = acc * X + Interval::rational(s[n], prec);
  return acc;
}

}  // namespace polyhex
