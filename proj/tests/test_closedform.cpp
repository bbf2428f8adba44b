#include <gtest/gtest.h>

#include "polyhex/closedform.hpp"
#include "polyhex/temperley.hpp"

using namespace polyhex;

namespace {

// alpha, beta, gamma, delta regrouped from the iterated D(u) expansion:
// with (A1, F) = (1, 0) the u -> q t series specialises to alpha and its
// t-derivative at t = 1 is q * gamma; (0, 1) gives beta and delta.
ThetaSums theta_from_d_expansion(int N) {
  const int W = N + 1;
  SolvedSeries a_only{TruncatedSeries::constant(W, 1), TruncatedSeries(W), TruncatedSeries(W),
                      TruncatedSeries(W), TruncatedSeries(W), TruncatedSeries(W)};
  SolvedSeries f_only = a_only;
  f_only.A1 = TruncatedSeries(W);
  f_only.F = TruncatedSeries::constant(W, 1);
  const auto da = d_series(a_only, W), df = d_series(f_only, W);
  return {da.specialize().truncated(N), df.specialize().truncated(N), da.dt_at_1().shifted_down(1).truncated(N),
          df.dt_at_1().shifted_down(1).truncated(N)};
}

// Term-by-term alpha with explicit polynomial denominators and series
// division.
TruncatedSeries alpha_by_division(int N) {
  TruncatedSeries sum(N);
  for (int i = 1; theta_exponent(i) <= N; ++i) {
    TruncatedSeries den = TruncatedSeries::constant(N, 1);
    for (int k = 0; k < i; ++k) den = den * TruncatedSeries::polynomial(N, {1, -1});
    for (int k = 1; k <= i; ++k) {
      auto f = TruncatedSeries::constant(N, 1) - TruncatedSeries::monomial(N, k + 1);
      den = den * f * f;
    }
    sum += div(TruncatedSeries::monomial(N, theta_exponent(i)), den);
  }
  return sum;
}

Real real(const char* s) { return Real(s, 128); }

}  // namespace

TEST(ThetaSums, LeadingTerms) {
  const auto th = theta_sums(12);
  EXPECT_EQ(th.alpha.valuation(), 3);
  EXPECT_EQ(th.beta.valuation(), 3);
  EXPECT_EQ(th.gamma.valuation(), 2);
  EXPECT_EQ(th.alpha[3], 1);
  EXPECT_EQ(th.gamma[2], 1);
  EXPECT_THROW(theta_sums(2), SeriesError);
}

TEST(ThetaSums, MatchRegroupedExpansion) {
  for (int N : {10, 40, 90}) {
    const auto th = theta_sums(N);
    const auto oracle = theta_from_d_expansion(N);
    EXPECT_EQ(th.alpha, oracle.alpha) << N;
    EXPECT_EQ(th.beta, oracle.beta) << N;
    EXPECT_EQ(th.gamma, oracle.gamma) << N;
    EXPECT_EQ(th.delta, oracle.delta) << N;
    EXPECT_EQ(th.alpha.order(), N);
  }
  EXPECT_EQ(theta_sums(60).alpha, alpha_by_division(60));
}

TEST(ClosedForm, PublishedCoefficients) {
  const auto a = a1_closed(12);
  const std::vector<long> want = {0, 1, 3, 11, 44, 184, 786, 3391, 14683, 63619, 275506, 1192134, 5154794};
  ASSERT_EQ(a.order(), 12);
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(a[n], want[static_cast<std::size_t>(n)]) << n;
}

TEST(ClosedForm, IntegralAndPositiveTo250) {
  const auto a = a1_closed(250);
  EXPECT_EQ(a.order(), 250);
  EXPECT_TRUE(a.has_integer_coefficients());
  for (int n = 1; n <= 250; ++n) ASSERT_GT(a[n], 0);
  EXPECT_EQ(a1_closed(30), a.truncated(30));
}

TEST(ClosedForm, DenominatorConstantTerm) {
  const auto cf = closed_form(20);
  EXPECT_EQ(cf.den[0], 1);
  EXPECT_EQ(cf.num[0], 0);
  EXPECT_EQ(cf.num[1], 1);
}

TEST(Interval, ArithmeticEnclosesExactValues) {
  const auto third = Interval::rational(Rational(1, 3), 64);
  const auto sum = third + third + third;
  EXPECT_TRUE(sum.contains(Real(1.0, 64)));
  const auto prod = Interval::integer(3L, 64) * third;
  EXPECT_TRUE(prod.contains(Real(1.0, 64)));
  EXPECT_THROW(Interval::integer(1L, 64) / (third - third), std::domain_error);
  EXPECT_EQ(Interval::integer(-2L, 64).certain_sign(), -1);
  EXPECT_EQ((third - third).certain_sign(), 0);
}

TEST(Interval, TruncatedEvaluation) {
  const auto v = eval_truncated(TruncatedSeries::polynomial(3, {1, 2, 0, 1}), Real(0.5, 64), 64);
  EXPECT_TRUE(v.contains(Real(2.125, 64)));
}

TEST(ThetaIntervals, EncloseSeriesValues) {
  const auto th = theta_sums(300);
  for (const char* xs : {"0.05", "0.2", "0.2315", "0.4"}) {
    const Real x = real(xs);
    const auto iv = eval_theta_sums(x, 128);
    // Coefficients grow subexponentially, so the order-300 truncation
    // differs from the sums by far less than the interval width.
    auto close = [&](const Interval& a, const TruncatedSeries& s) {
      const auto b = eval_truncated(s, x, 128);
      return !(a.hi() < b.lo()) && !(b.hi() < a.lo());
    };
    EXPECT_TRUE(close(iv.alpha, th.alpha)) << xs;
    EXPECT_TRUE(close(iv.beta, th.beta)) << xs;
    EXPECT_TRUE(close(iv.gamma, th.gamma)) << xs;
    EXPECT_TRUE(close(iv.delta, th.delta)) << xs;
    EXPECT_TRUE(iv.alpha.width() < real("1e-30"));
  }
}

TEST(ThetaIntervals, ZeroAndDomain) {
  const auto z = eval_theta_sums(Real(0.0, 64), 64);
  EXPECT_TRUE(z.alpha.contains(Real(0.0, 64)));
  EXPECT_EQ(z.terms, 0);
  EXPECT_THROW(eval_theta_sums(Real(-0.1, 64), 64), EvaluationError);
  EXPECT_THROW(eval_theta_sums(Real(1.0, 64), 64), EvaluationError);
  EXPECT_THROW(eval_denominator(Real(0.6, 64), 64), EvaluationError);
}

TEST(Denominator, ValuesAndSignChange) {
  const auto d0 = eval_denominator(Real(0.0, 64), 64);
  EXPECT_TRUE(d0.contains(Real(1.0, 64)));
  EXPECT_EQ(d0.width().sign(), 0);
  EXPECT_EQ(eval_denominator(real("0.2"), 64).certain_sign(), 1);
  EXPECT_EQ(eval_denominator(real("0.23"), 64).certain_sign(), 1);
  EXPECT_EQ(eval_denominator(real("0.24"), 64).certain_sign(), -1);
  EXPECT_EQ(eval_denominator(real("0.3"), 64).certain_sign(), -1);
  EXPECT_EQ(eval_numerator(real("0.2315"), 64).certain_sign(), 1);
}

TEST(Denominator, PrecisionLadderShrinksAndNests) {
  const Real x = real("0.2315276");
  Interval prev = eval_denominator(x, 64);
  for (mpfr_prec_t p = 128; p <= 1024; p *= 2) {
    const Interval cur = eval_denominator(x, p);
    EXPECT_TRUE(cur.width() <= prev.width());
    EXPECT_FALSE(cur.hi() < prev.lo() || prev.hi() < cur.lo());
    prev = cur;
  }
  const Interval w = eval_denominator_to_width(x, real("1e-60"));
  EXPECT_TRUE(w.width() <= real("1e-60"));
  EXPECT_THROW(eval_denominator_to_width(x, real("1e-400")), EvaluationError);
}

TEST(Denominator, EnclosesSeriesEvaluation) {
  const auto cf = closed_form(300);
  const Real x = real("0.1");
  const auto d = eval_denominator(x, 128);
  const auto s = eval_truncated(cf.den, x, 128);
  EXPECT_FALSE(d.hi() < s.lo() || s.hi() < d.lo());
}
