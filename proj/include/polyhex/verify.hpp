#pragma once

// Cross-checks between the independent pipelines: closed form, series
// system, column DP and exhaustive enumeration.

#include <json.hpp>

#include "polyhex/analysis.hpp"
#include "polyhex/closedform.hpp"
#include "polyhex/column_dp.hpp"
#include "polyhex/enumerate.hpp"
#include "polyhex/temperley.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace polyhex {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

inline constexpr std::array<std::string_view, 4> kSuites = {"series", "partition", "functional", "analysis"};

inline constexpr int kVerifyEnumArea = 10;
inline constexpr int kVerifyClassArea = 9;
inline constexpr int kVerifyDpArea = 40;
inline constexpr int kVerifyHeightArea = 8;

// Level-one coefficients 1..12.
inline const std::vector<long>& level1_reference() {
  static const std::vector<long> v = {1, 3, 11, 44, 184, 786, 3391, 14683, 63619, 275506, 1192134, 5154794};
  return v;
}

namespace detail {

inline std::string first_difference(const CoefficientTable& a, const CoefficientTable& b) {
  const int n = std::min(a.max_area(), b.max_area());
  for (int i = 1; i <= n; ++i)
    if (a(i) != b(i)) return "area " + std::to_string(i) + ": " + a(i).get_str() + " vs " + b(i).get_str();
  return "";
}

inline CheckResult compare(std::string suite, std::string name, const CoefficientTable& a, const CoefficientTable& b) {
  std::string diff = first_difference(a, b);
  const bool ok = diff.empty();
  if (ok) diff = "agree on areas 1.." + std::to_string(std::min(a.max_area(), b.max_area()));
  return {std::move(suite), std::move(name), ok, std::move(diff)};
}

}  // namespace detail

inline std::vector<CheckResult> verify_series(int N, int threads) {
  using detail::compare;
  std::vector<CheckResult> out;
  const auto closed = table_from_series(Model::level1, a1_closed(N), N);
  const auto solved = solve_system(N);
  out.push_back(compare("series", "closed form vs system", closed, table_from_series(Model::level1, solved.A1, N)));

  const int dp_n = std::min(N, kVerifyDpArea);
  const auto dp1 = dp_tally(1, dp_n, threads);
  out.push_back(compare("series", "closed form vs dp (level 1)", closed, dp1.complete));
  out.push_back(compare("series", "system C1 vs dp incomplete (level 1)",
                        table_from_series(Model::incomplete_level1, solved.C1, dp_n), dp1.incomplete));
  out.push_back(compare("series", "system B1 vs dp height sum (level 1)",
                        table_from_series(Model::level1, solved.B1, dp_n), {Model::level1, dp1.height_sum}));

  if (N >= 12) {
    std::vector<Integer> ref(level1_reference().begin(), level1_reference().end());
    out.push_back(compare("series", "published level-1 coefficients", closed.prefix(12), {Model::level1, ref}));
  }

  const int en = std::min(N, kVerifyEnumArea);
  const auto tally = enumerate_tallies(en, {threads, std::min(en, kVerifyClassArea)});
  out.push_back(compare("series", "closed form vs enumeration (level 1)", closed, tally.level(1)));
  for (int m : {0, 2})
    out.push_back(compare("series", "dp vs enumeration (level " + std::to_string(m) + ")",
                          dp_count_subconvex(m, en, threads), tally.level(m)));
  out.push_back(compare("series", "system B1 vs enumeration height sum",
                        table_from_series(Model::level1, solved.B1, en),
                        {Model::level1, tally.level1_height_sum}));
  out.push_back(compare("series", "system C1 vs enumeration (incomplete level 1)",
                        table_from_series(Model::incomplete_level1, solved.C1, tally.classify_max_area),
                        tally.incomplete_table()));
  return out;
}

inline std::vector<CheckResult> verify_partition(int N, int threads) {
  using detail::compare;
  std::vector<CheckResult> out;
  const int n = std::min(N, kVerifyClassArea);
  const auto solved = solve_system(std::max(n, 6));
  const auto parts = part_series(solved, n);
  const auto tally = enumerate_tallies(n, {threads, n});

  TruncatedSeries s_sum(n), t_sum(n);
  for (std::size_t i = 0; i < kAllClassLabels.size(); ++i) {
    const ClassLabel l = kAllClassLabels[i];
    const auto& part = is_complete_class(l) ? parts.complete[i] : parts.incomplete[i - parts.complete.size()];
    (is_complete_class(l) ? s_sum : t_sum) += part;
    out.push_back(compare("partition", std::string(to_string(l)) + " tally vs part series",
                          table_from_series(Model::level1, part, n), {Model::level1, tally.by_class.at(l)}));
  }
  const auto a1 = solved.A1.truncated(n), c1 = solved.C1.truncated(n);
  out.push_back({"partition", "sum of S-parts equals A1", s_sum == a1, s_sum == a1 ? "" : s_sum.to_string()});
  out.push_back({"partition", "sum of T-parts equals C1", t_sum == c1, t_sum == c1 ? "" : t_sum.to_string()});
  return out;
}

inline std::vector<CheckResult> verify_functional(int N, int threads) {
  std::vector<CheckResult> out;
  const auto sys = build_system(N + 2);
  const auto solved = solve_system(sys, N);
  const auto res = residuals(sys, solved);
  for (int i = 0; i < kUnknowns; ++i) {
    const auto r = res[static_cast<std::size_t>(i)].truncated(N);
    out.push_back({"functional", "system equation " + std::to_string(i + 1) + " residual", r.is_zero(),
                   r.is_zero() ? "zero to order " + std::to_string(N) : r.to_string()});
  }
  const auto d = d_series(solved, N);
  const bool d_ok = d_functional_residual(d, solved).is_zero();
  out.push_back({"functional", "D(u) iteration residual", d_ok, d_ok ? "zero" : "nonzero"});
  const bool dq_ok = d.specialize() == solved.Dq.truncated(N);
  out.push_back({"functional", "D(u) at u = 1 equals D(q)", dq_ok, ""});

  const auto A = assemble_A(solved, N);
  const bool a_ok = A.specialize() == solved.A1.truncated(N);
  out.push_back({"functional", "A(q, 1) equals A1", a_ok, ""});
  const auto dA = A.dt_at_1();
  const bool b_ok = dA == solved.B1.truncated(dA.order());
  out.push_back({"functional", "dA/dt at t = 1 equals B1", b_ok, ""});

  const int h = std::min(N, kVerifyHeightArea);
  const auto tally = enumerate_tallies(h, {threads, 0});
  bool h_ok = true;
  std::string detail;
  for (int n = 1; n <= h && h_ok; ++n)
    for (int k = 1; k <= n; ++k) {
      auto it = tally.level1_by_height.find({n, k});
      const Integer want = it == tally.level1_by_height.end() ? Integer(0) : it->second;
      if (A(n, k) != Rational(want)) {
        h_ok = false;
        detail = "area " + std::to_string(n) + " height " + std::to_string(k);
        break;
      }
    }
  out.push_back({"functional", "(area, last-column height) table vs enumeration", h_ok, detail});
  return out;
}

inline std::vector<CheckResult> verify_analysis(int N, int /*threads*/) {
  std::vector<CheckResult> out;
  const int n = std::max(N, kMinAmplitudeTerms);
  const auto table = table_from_series(Model::level1, a1_closed(n), n);
  AnalysisOptions opts;
  opts.certified_pole = true;
  const auto rep = analyze(table, opts);

  // The published value carries 12 digits, so it is checked against an
  // enclosure of width about 1e-11.
  const Interval coarse = locate_level1_pole(Real("1e-11", 64));
  const bool contains = coarse.contains(Real("0.231527613159", 128)) && coarse.width() <= Real("1e-10", 64) &&
                        coarse.contains(*rep.q_c);
  out.push_back({"analysis", "certified singularity interval", contains, coarse.to_string(15)});

  const int s_lo = eval_denominator(rep.q_c->lo(), 256).certain_sign();
  const int s_hi = eval_denominator(rep.q_c->hi(), 256).certain_sign();
  out.push_back({"analysis", "denominator changes sign across the interval", s_lo * s_hi == -1, ""});

  const bool consistent = rep.lower_bound.value <= rep.tau->lo();
  out.push_back({"analysis", "lower bound below growth constant", consistent,
                 rep.lower_bound.value.to_string(10, MPFR_RNDD) + " <= " + rep.tau->lo().to_string(10, MPFR_RNDD)});

  Real diff(256);
  mpfr_sub(diff.get(), rep.tau_estimate->value.get(), rep.tau->mid().get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  const bool ratio_ok = diff <= Real("1e-4", 64);
  out.push_back({"analysis", "ratio extrapolation agrees with certified growth constant", ratio_ok,
                 "difference " + diff.to_string(3)});
  const bool amp_ok = rep.amplitude && rep.amplitude->value.sign() > 0;
  out.push_back({"analysis", "positive amplitude estimate", amp_ok,
                 amp_ok ? rep.amplitude->value.to_string(12) : "missing"});
  return out;
}

inline std::vector<CheckResult> run_suite(std::string_view suite, int N, int threads) {
  if (suite == "series") return verify_series(N, threads);
  if (suite == "partition") return verify_partition(N, threads);
  if (suite == "functional") return verify_functional(N, threads);
  if (suite == "analysis") return verify_analysis(N, threads);
  throw std::invalid_argument("unknown suite: " + std::string(suite));
}

inline nlohmann::json to_json(const CheckResult& c) {
  return {{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

}  // namespace polyhex
