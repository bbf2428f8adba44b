#pragma once

// Dominant-pole isolation, growth constants, rigorous lower bounds,
// amplitudes and ratio extrapolation.

#include <json.hpp>

#include "polyhex/closedform.hpp"
#include "polyhex/coefficients.hpp"
#include "polyhex/interval.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyhex {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the precision cap is hit; carries the best interval so far.
class PrecisionCapError : public AnalysisError {
 public:
  PrecisionCapError(const std::string& what, Interval best) : AnalysisError(what), best_(std::move(best)) {}
  const Interval& best() const { return best_; }

 private:
  Interval best_;
};

// Certified enclosure of f(x) at working precision prec.
using CertifiedFunction = std::function<Interval(const Real& x, mpfr_prec_t prec)>;

// Bisection on certified signs. When the value at a midpoint straddles
// zero the working precision doubles, up to kMaxPrecision.
inline Interval locate_pole(const CertifiedFunction& f, const Interval& bracket, const Real& target_width) {
  Real lo = bracket.lo(), hi = bracket.hi();
  mpfr_prec_t prec = kMinPrecision;

  auto sign_at = [&](const Real& x) {
    for (;;) {
      const Interval v = f(x, prec);
      const int s = v.certain_sign();
      if (s != 0) return s;
      if (v.lo().sign() == 0 && v.hi().sign() == 0) return 0;  // exact root
      if (prec >= kMaxPrecision)
        throw PrecisionCapError("precision cap reached while isolating the root", Interval(lo, hi));
      prec *= 2;
    }
  };

  const int s_lo = sign_at(lo);
  const int s_hi = sign_at(hi);
  if (s_lo == 0) return Interval(lo, lo);
  if (s_hi == 0) return Interval(hi, hi);
  if (s_lo == s_hi) throw AnalysisError("no sign change across the bracket");

  for (;;) {
    Interval current(lo, hi);
    if (current.width() <= target_width) return current;
    Real mid = midpoint(lo, hi);
    const int s = sign_at(mid);
    if (s == 0) return Interval(mid, mid);
    if (s == s_lo)
      lo = std::move(mid);
    else
      hi = std::move(mid);
  }
}

// Level-one denominator root in [0.2, 0.3].
inline Interval locate_level1_pole(const Real& target_width) {
  const Interval bracket(Real("0.2", kMinPrecision, MPFR_RNDD), Real("0.3", kMinPrecision, MPFR_RNDU));
  return locate_pole([](const Real& x, mpfr_prec_t prec) { return eval_denominator(x, prec); }, bracket,
                     target_width);
}

inline Interval growth_constant(const Interval& q_c) {
  if (!q_c.positive()) throw AnalysisError("singularity interval must be positive");
  return Interval::integer(1L, q_c.precision()) / q_c;
}

struct LowerBound {
  Real value;  // rounded down
  int n = 0;   // witnessing area
};

// max_n a_n^{1/n} over the table, each root rounded down.
inline LowerBound lower_bound(const CoefficientTable& table, mpfr_prec_t prec = 128) {
  if (table.max_area() < 1) throw AnalysisError("empty coefficient table");
  LowerBound best{Real(prec), 0};
  Real a(prec), r(prec);
  for (int n = 1; n <= table.max_area(); ++n) {
    if (sgn(table(n)) <= 0) continue;
    mpfr_set_z(a.get(), table(n).get_mpz_t(), MPFR_RNDD);
    mpfr_rootn_ui(r.get(), a.get(), static_cast<unsigned long>(n), MPFR_RNDD);
    if (best.n == 0 || best.value < r) best = {r, n};
  }
  if (best.n == 0) throw AnalysisError("no positive coefficients");
  return best;
}

namespace detail {

// s2 - (s2 - s1)^2 / (s2 - 2 s1 + s0). Returns s2 unchanged unless the
// differences shrink geometrically, |s2 - s1| <= 0.95 |s1 - s0|.
template <typename T>
T aitken(const T& s0, const T& s1, const T& s2) {
  const T d1 = s1 - s0, d2 = s2 - s1;
  if (d1 == 0 || abs(d2) * 20 > abs(d1) * 19) return s2;
  return s2 - d2 * d2 / (d2 - d1);
}

inline Real aitken(const Real& s0, const Real& s1, const Real& s2) {
  const mpfr_prec_t p = s2.precision();
  Real d1(p), d2(p), t(p), out(p);
  mpfr_sub(d1.get(), s1.get(), s0.get(), MPFR_RNDN);
  mpfr_sub(d2.get(), s2.get(), s1.get(), MPFR_RNDN);
  if (d1.sign() == 0) return s2;
  mpfr_div(t.get(), d2.get(), d1.get(), MPFR_RNDN);
  if (mpfr_cmpabs(t.get(), Real(0.95, 64).get()) > 0) return s2;
  mpfr_sub(t.get(), d2.get(), d1.get(), MPFR_RNDN);
  mpfr_div(t.get(), d2.get(), t.get(), MPFR_RNDN);
  mpfr_mul(t.get(), t.get(), d2.get(), MPFR_RNDN);
  mpfr_sub(out.get(), s2.get(), t.get(), MPFR_RNDN);
  return out;
}

}  // namespace detail

inline constexpr int kMinAmplitudeTerms = 20;
inline constexpr int kMinRatioTerms = 15;
inline constexpr std::string_view kAmplitudeMethod = "aitken(a_n/tau^n)";
inline constexpr std::string_view kRatioMethod = "aitken(a_{n+1}/a_n)";
inline constexpr std::string_view kPoleMethod = "certified-bisection(den)";

// Aitken-accelerated limit of a_n / tau^n over the last three terms.
inline Real amplitude(const CoefficientTable& table, const Real& tau, mpfr_prec_t prec = 256) {
  const int N = table.max_area();
  if (N < kMinAmplitudeTerms) throw AnalysisError("amplitude needs at least 20 terms");
  if (tau.sign() <= 0) throw AnalysisError("tau must be positive");
  std::vector<Real> q;
  for (int n = N - 2; n <= N; ++n) {
    Real a(prec), p(prec);
    mpfr_set_z(a.get(), table(n).get_mpz_t(), MPFR_RNDN);
    mpfr_pow_ui(p.get(), tau.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_div(a.get(), a.get(), p.get(), MPFR_RNDN);
    q.push_back(std::move(a));
  }
  return detail::aitken(q[0], q[1], q[2]);
}

struct RatioEstimate {
  Rational value;   // last accelerated ratio
  Rational spread;  // max - min of the last three accelerated ratios
  std::vector<std::pair<int, Rational>> ratios;  // (n, a_{n+1}/a_n)
};

// Exact Aitken extrapolation of a_{n+1}/a_n. Leading zero coefficients are
// skipped.
inline RatioEstimate ratio_extrapolate(const CoefficientTable& table) {
  int first = 1;
  while (first <= table.max_area() && sgn(table(first)) == 0) ++first;
  if (table.max_area() - first + 1 < kMinRatioTerms) throw AnalysisError("ratio extrapolation needs at least 15 terms");
  RatioEstimate est;
  for (int n = first; n < table.max_area(); ++n) {
    if (sgn(table(n)) <= 0) throw AnalysisError("non-positive coefficient inside the ratio range");
    est.ratios.emplace_back(n, Rational(table(n + 1), table(n)));
    est.ratios.back().second.canonicalize();
  }
  std::vector<Rational> acc;
  for (std::size_t i = 2; i < est.ratios.size(); ++i)
    acc.push_back(detail::aitken(est.ratios[i - 2].second, est.ratios[i - 1].second, est.ratios[i].second));
  const auto tail = std::vector<Rational>(acc.end() - 3, acc.end());
  est.value = acc.back();
  est.spread = *std::max_element(tail.begin(), tail.end()) - *std::min_element(tail.begin(), tail.end());
  return est;
}

inline Real to_real(const Rational& r, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
  Real out(prec);
  mpfr_set_q(out.get(), r.get_mpq_t(), rnd);
  return out;
}

// ---------------------------------------------------------------------------

struct Estimate {
  Real value;
  std::string method;
};

struct AnalysisReport {
  Model model = Model::level1;
  int terms_used = 0;
  std::optional<Interval> q_c;       // certified, when a denominator is available
  std::optional<Interval> tau;       // reciprocal of q_c
  std::optional<Estimate> tau_estimate;  // ratio extrapolation
  std::optional<Real> tau_spread;
  std::optional<Estimate> amplitude;
  LowerBound lower_bound;
  std::vector<std::pair<int, Rational>> ratio_table;
  std::vector<std::string> notes;
};

struct AnalysisOptions {
  Real pole_width = Real("1e-20", 128, MPFR_RNDD);
  bool certified_pole = false;  // level one only
};

inline AnalysisReport analyze(const CoefficientTable& table, const AnalysisOptions& opts = {}) {
  AnalysisReport rep;
  rep.model = table.model;
  rep.terms_used = table.max_area();
  rep.lower_bound = lower_bound(table);

  std::optional<Real> tau_point;
  if (opts.certified_pole) {
    if (table.model != Model::level1) throw AnalysisError("certified pole only available for level one");
    rep.q_c = locate_level1_pole(opts.pole_width);
    rep.tau = growth_constant(*rep.q_c);
    tau_point = rep.tau->mid();
  }

  int first = 1;
  while (first <= table.max_area() && sgn(table(first)) == 0) ++first;
  if (table.max_area() - first + 1 >= kMinRatioTerms) {
    const RatioEstimate est = ratio_extrapolate(table);
    rep.ratio_table = est.ratios;
    rep.tau_estimate = Estimate{to_real(est.value, 256), std::string(kRatioMethod)};
    rep.tau_spread = to_real(est.spread, 64, MPFR_RNDU);
    if (!tau_point) tau_point = rep.tau_estimate->value;
  } else {
    for (int n = first; n < table.max_area(); ++n)
      if (sgn(table(n)) > 0) rep.ratio_table.emplace_back(n, Rational(table(n + 1), table(n)));
    for (auto& r : rep.ratio_table) r.second.canonicalize();
    rep.notes.push_back("fewer than 15 terms: no ratio extrapolation");
  }

  if (tau_point && table.max_area() >= kMinAmplitudeTerms)
    rep.amplitude = Estimate{amplitude(table, *tau_point), std::string(kAmplitudeMethod)};
  else
    rep.notes.push_back("fewer than 20 terms or no tau: amplitude not estimated");
  return rep;
}

inline std::string decimal(const Rational& r, int digits) { return to_real(r, 256).to_string(digits); }

inline nlohmann::json interval_json(const Interval& v, int digits) {
  return nlohmann::json::array({v.lo().to_string(digits, MPFR_RNDD), v.hi().to_string(digits, MPFR_RNDU)});
}

inline nlohmann::json to_json(const AnalysisReport& r, int digits = 15) {
  nlohmann::json j;
  j["model"] = std::string(to_string(r.model));
  j["terms_used"] = r.terms_used;
  if (r.q_c) {
    j["q_c"] = {{"interval", interval_json(*r.q_c, digits)}, {"method", std::string(kPoleMethod)}};
    j["tau"] = {{"interval", interval_json(*r.tau, digits)}, {"method", "reciprocal(q_c)"}};
  }
  if (r.tau_estimate)
    j["tau_estimate"] = {{"value", r.tau_estimate->value.to_string(digits)},
                         {"spread", r.tau_spread->to_string(3, MPFR_RNDU)},
                         {"method", r.tau_estimate->method}};
  if (r.amplitude)
    j["amplitude"] = {{"value", r.amplitude->value.to_string(digits)}, {"method", r.amplitude->method}};
  j["lower_bound"] = {{"value", r.lower_bound.value.to_string(digits, MPFR_RNDD)}, {"n", r.lower_bound.n}};
  auto rt = nlohmann::json::array();
  for (const auto& [n, q] : r.ratio_table) rt.push_back({n, decimal(q, digits)});
  j["ratio_table"] = rt;
  j["notes"] = r.notes;
  return j;
}

}  // namespace polyhex
