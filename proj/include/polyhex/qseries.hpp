#pragma once

// Truncated formal power series in q over exact rationals, plus a
// triangular bivariate variant in (q, t).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyhex {

using Rational = mpq_class;
using Integer = mpz_class;

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficients c_0 .. c_N of a power series known up to q^N.
class TruncatedSeries {
 public:
  TruncatedSeries() : TruncatedSeries(0) {}
  explicit TruncatedSeries(int order) {
    if (order < 0) throw SeriesError("negative series order");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, Rational(0));
  }

  // Missing coefficients are zero; extra ones are dropped.
  TruncatedSeries(int order, std::vector<Rational> coeffs) : TruncatedSeries(order) {
    const auto n = std::min(coeffs.size(), coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) coeffs_[i] = std::move(coeffs[i]);
  }

  static TruncatedSeries polynomial(int order, std::initializer_list<long> coeffs) {
    TruncatedSeries s(order);
    int n = 0;
    for (long c : coeffs) {
      if (n > order) break;
      s.coeffs_[n++] = c;
    }
    return s;
  }

  template <typename Range>
  static TruncatedSeries from_range(int order, const Range& coeffs) {
    TruncatedSeries s(order);
    int n = 0;
    for (const auto& c : coeffs) {
      if (n > order) break;
      s.coeffs_[n++] = c;
    }
    return s;
  }

  static TruncatedSeries constant(int order, const Rational& c) {
    TruncatedSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  static TruncatedSeries monomial(int order, int exponent, const Rational& c = 1) {
    if (exponent < 0) throw SeriesError("negative monomial exponent");
    TruncatedSeries s(order);
    if (exponent <= order) s.coeffs_[exponent] = c;
    return s;
  }

  // 1 / (1 - q^k)
  static TruncatedSeries geom(int k, int order) {
    if (k < 1) throw SeriesError("geom requires k >= 1");
    TruncatedSeries s(order);
    for (int n = 0; n <= order; n += k) s.coeffs_[n] = 1;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Rational& operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
  Rational& operator[](int n) { return coeffs_.at(static_cast<std::size_t>(n)); }

  // Zero past the truncation order is not known, so reading there is an error.
  const Rational& coeff(int n) const {
    if (n < 0 || n > order()) throw SeriesError("coefficient index outside truncation order");
    return coeffs_[static_cast<std::size_t>(n)];
  }

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  // Index of the first nonzero coefficient; nullopt for the zero series.
  std::optional<int> valuation() const {
    for (int n = 0; n <= order(); ++n)
      if (sgn(coeffs_[n]) != 0) return n;
    return std::nullopt;
  }

  bool is_zero() const { return !valuation().has_value(); }

  TruncatedSeries truncated(int order) const {
    if (order > this->order()) throw SeriesError("cannot extend a truncated series");
    TruncatedSeries s(order);
    std::copy_n(coeffs_.begin(), order + 1, s.coeffs_.begin());
    return s;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& b) {
    shrink_to(b.order());
    for (int n = 0; n <= order(); ++n) coeffs_[n] += b.coeffs_[n];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& b) {
    shrink_to(b.order());
    for (int n = 0; n <= order(); ++n) coeffs_[n] -= b.coeffs_[n];
    return *this;
  }
  TruncatedSeries& operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) {
    for (auto& x : a.coeffs_) x = -x;
    return a;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
  friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) { return a *= c; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int order = std::min(a.order(), b.order());
    TruncatedSeries r(order);
    const int va = a.valuation().value_or(order + 1);
    const int vb = b.valuation().value_or(order + 1);
    Rational tmp;
    for (int i = va; i <= order; ++i) {
      const Rational& ai = a.coeffs_[i];
      if (sgn(ai) == 0) continue;
      for (int j = vb; i + j <= order; ++j) {
        if (sgn(b.coeffs_[j]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), ai.get_mpq_t(), b.coeffs_[j].get_mpq_t());
        r.coeffs_[i + j] += tmp;
      }
    }
    return r;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& b) { return *this = *this * b; }

  // Multiply by 1/(1 - q^k) in place, O(N).
  TruncatedSeries& mul_geom(int k) {
    if (k < 1) throw SeriesError("geom requires k >= 1");
    for (int n = k; n <= order(); ++n) coeffs_[n] += coeffs_[n - k];
    return *this;
  }

  // Multiply by (1 - q^k) in place, O(N).
  TruncatedSeries& mul_one_minus(int k) {
    if (k < 1) throw SeriesError("one_minus requires k >= 1");
    for (int n = order(); n >= k; --n) coeffs_[n] -= coeffs_[n - k];
    return *this;
  }

  // Multiply by q^k, keeping the order.
  TruncatedSeries shifted_up(int k) const {
    TruncatedSeries r(order());
    for (int n = order(); n >= k; --n) r.coeffs_[n] = coeffs_[n - k];
    return r;
  }

  // Divide by q^k; requires valuation >= k and loses k orders.
  TruncatedSeries shifted_down(int k) const {
    if (k > order() + 1) throw SeriesError("shift exceeds truncation order");
    for (int n = 0; n < k; ++n)
      if (sgn(coeffs_[n]) != 0) throw SeriesError("division by q^k of a series with lower valuation");
    TruncatedSeries r(order() - k);
    for (int n = 0; n <= r.order(); ++n) r.coeffs_[n] = coeffs_[n + k];
    return r;
  }

  TruncatedSeries derivative() const {
    if (order() == 0) throw SeriesError("derivative of an order-0 series has no known coefficients");
    TruncatedSeries r(order() - 1);
    for (int n = 1; n <= order(); ++n) r.coeffs_[n - 1] = coeffs_[n] * n;
    return r;
  }

  // Equality up to the common order.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int order = std::min(a.order(), b.order());
    for (int n = 0; n <= order; ++n)
      if (a.coeffs_[n] != b.coeffs_[n]) return false;
    return true;
  }

  // Sparse "c*q^n" text, e.g. "1 + 3*q^2 - 1/2*q^5 + O(q^6)".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int n = 0; n <= order(); ++n) {
      const Rational& c = coeffs_[n];
      if (sgn(c) == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      if (n == 0) {
        os << mag.get_str();
      } else {
        if (mag != 1) os << mag.get_str() << "*";
        os << "q";
        if (n != 1) os << "^" << n;
      }
    }
    if (first) os << "0";
    os << " + O(q^" << order() + 1 << ")";
    return os.str();
  }

  // Exact "p/q" strings (integers without the denominator).
  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.get_str());
    return out;
  }

  static TruncatedSeries from_strings(const std::vector<std::string>& values) {
    if (values.empty()) throw SeriesError("empty coefficient list");
    TruncatedSeries s(static_cast<int>(values.size()) - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
      Rational r;
      if (r.set_str(values[i], 10) != 0) throw SeriesError("bad rational literal: " + values[i]);
      r.canonicalize();
      s.coeffs_[i] = r;
    }
    return s;
  }

  bool has_integer_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c.get_den() == 1; });
  }

 private:
  void shrink_to(int order) {
    if (order < this->order()) coeffs_.resize(static_cast<std::size_t>(order) + 1);
  }

  std::vector<Rational> coeffs_;
};

// a / b. If b(0) == 0 the common power of q is cancelled first, which
// costs that many orders of precision.
inline TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b) {
  const auto vb = b.valuation();
  if (!vb) throw SeriesError("division by the zero series");
  const auto va = a.valuation();
  TruncatedSeries num = a, den = b;
  if (*vb > 0) {
    if (va && *va < *vb)
      throw SeriesError("divisor valuation exceeds dividend valuation");
    num = a.order() >= *vb ? a.shifted_down(*vb) : TruncatedSeries(0);
    den = b.shifted_down(*vb);
  }
  const int order = std::min(num.order(), den.order());
  TruncatedSeries r(order);
  const Rational inv0 = 1 / den[0];
  Rational acc, tmp;
  for (int n = 0; n <= order; ++n) {
    acc = num[n];
    for (int k = 1; k <= n; ++k) {
      if (sgn(den[k]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), den[k].get_mpq_t(), r[n - k].get_mpq_t());
      acc -= tmp;
    }
    r[n] = acc * inv0;
  }
  return r;
}

// 1 / (1 - q)^k
inline TruncatedSeries inverse_one_minus_q_pow(int k, int order) {
  TruncatedSeries s = TruncatedSeries::constant(order, 1);
  for (int i = 0; i < k; ++i) s.mul_geom(1);
  return s;
}

// Series c[n][k] for q^n t^k with 0 <= k <= n <= N. A column never
// exceeds the area of its figure, so nothing above the diagonal is lost.
class BivariateSeries {
 public:
  BivariateSeries() : BivariateSeries(0) {}
  explicit BivariateSeries(int order) {
    if (order < 0) throw SeriesError("negative series order");
    rows_.resize(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) rows_[n].assign(static_cast<std::size_t>(n) + 1, Rational(0));
  }

  int order() const { return static_cast<int>(rows_.size()) - 1; }

  const Rational& operator()(int n, int k) const { return rows_.at(n).at(k); }
  Rational& operator()(int n, int k) { return rows_.at(n).at(k); }

  // Coefficient with zero outside the triangle (k > n).
  Rational at(int n, int k) const {
    if (n < 0 || n > order()) throw SeriesError("coefficient index outside truncation order");
    if (k < 0 || k > n) return 0;
    return rows_[n][k];
  }

  // q^a t^b f(q). Fails if a nonzero term would land above the diagonal.
  static BivariateSeries times_monomial(const TruncatedSeries& f, int a, int b) {
    BivariateSeries r(f.order());
    for (int m = 0; m + a <= f.order(); ++m) {
      if (sgn(f[m]) == 0) continue;
      if (b > m + a) throw SeriesError("term outside the triangular layout");
      r.rows_[m + a][b] = f[m];
    }
    return r;
  }

  // Embeds g(q, u) = sum g[n][k] q^n u^k under u -> q t.
  // `coeff(n, k)` supplies g's coefficients for n + k <= order.
  template <typename Fn>
  static BivariateSeries substitute_qt(int order, Fn&& coeff) {
    BivariateSeries r(order);
    for (int total = 0; total <= order; ++total)
      for (int k = 0; k <= total; ++k) r.rows_[total][k] = coeff(total - k, k);
    return r;
  }

  BivariateSeries& operator+=(const BivariateSeries& b) {
    shrink_to(b.order());
    for (int n = 0; n <= order(); ++n)
      for (int k = 0; k <= n; ++k) rows_[n][k] += b.rows_[n][k];
    return *this;
  }
  BivariateSeries& operator-=(const BivariateSeries& b) {
    shrink_to(b.order());
    for (int n = 0; n <= order(); ++n)
      for (int k = 0; k <= n; ++k) rows_[n][k] -= b.rows_[n][k];
    return *this;
  }
  friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) { return a += b; }
  friend BivariateSeries operator-(BivariateSeries a, const BivariateSeries& b) { return a -= b; }

  BivariateSeries& operator*=(const Rational& c) {
    for (auto& row : rows_)
      for (auto& x : row) x *= c;
    return *this;
  }

  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
    const int order = std::min(a.order(), b.order());
    BivariateSeries r(order);
    Rational tmp;
    for (int n1 = 0; n1 <= order; ++n1)
      for (int k1 = 0; k1 <= n1; ++k1) {
        const Rational& x = a.rows_[n1][k1];
        if (sgn(x) == 0) continue;
        for (int n2 = 0; n1 + n2 <= order; ++n2)
          for (int k2 = 0; k2 <= n2; ++k2) {
            const Rational& y = b.rows_[n2][k2];
            if (sgn(y) == 0) continue;
            mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
            r.rows_[n1 + n2][k1 + k2] += tmp;
          }
      }
    return r;
  }

  // Product with a t-free series.
  friend BivariateSeries operator*(const BivariateSeries& a, const TruncatedSeries& f) {
    const int order = std::min(a.order(), f.order());
    BivariateSeries r(order);
    Rational tmp;
    for (int n1 = 0; n1 <= order; ++n1)
      for (int k = 0; k <= n1; ++k) {
        const Rational& x = a.rows_[n1][k];
        if (sgn(x) == 0) continue;
        for (int m = 0; n1 + m <= order; ++m) {
          if (sgn(f[m]) == 0) continue;
          mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), f[m].get_mpq_t());
          r.rows_[n1 + m][k] += tmp;
        }
      }
    return r;
  }
  friend BivariateSeries operator*(const TruncatedSeries& f, const BivariateSeries& a) { return a * f; }

  // Multiply by 1 / (1 - q^s t), s >= 1.
  BivariateSeries& mul_geom_qt(int s) {
    if (s < 1) throw SeriesError("q-shift must be at least 1 to stay triangular");
    for (int n = s; n <= order(); ++n)
      for (int k = 1; k <= n; ++k)
        if (k - 1 <= n - s) rows_[n][k] += rows_[n - s][k - 1];
    return *this;
  }

  // Multiply by 1 / (1 - q^s) (t-free), s >= 1.
  BivariateSeries& mul_geom_q(int s) {
    if (s < 1) throw SeriesError("geom requires s >= 1");
    for (int n = s; n <= order(); ++n)
      for (int k = 0; k <= n - s; ++k) rows_[n][k] += rows_[n - s][k];
    return *this;
  }

  // t -> q t, i.e. c[n][k] q^n t^k -> c[n][k] q^{n+k} t^k.
  BivariateSeries t_scaled_by_q() const {
    BivariateSeries r(order());
    for (int n = 0; n <= order(); ++n)
      for (int k = 0; k <= n && n + k <= order(); ++k) r.rows_[n + k][k] = rows_[n][k];
    return r;
  }

  // t = 1.
  TruncatedSeries specialize() const {
    TruncatedSeries s(order());
    for (int n = 0; n <= order(); ++n)
      for (int k = 0; k <= n; ++k) s[n] += rows_[n][k];
    return s;
  }

  // d/dt at t = 1.
  TruncatedSeries dt_at_1() const {
    TruncatedSeries s(order());
    for (int n = 0; n <= order(); ++n)
      for (int k = 1; k <= n; ++k) s[n] += rows_[n][k] * k;
    return s;
  }

  bool is_zero() const {
    for (const auto& row : rows_)
      for (const auto& x : row)
        if (sgn(x) != 0) return false;
    return true;
  }

  friend bool operator==(const BivariateSeries& a, const BivariateSeries& b) {
    const int order = std::min(a.order(), b.order());
    for (int n = 0; n <= order; ++n)
      for (int k = 0; k <= n; ++k)
        if (a.rows_[n][k] != b.rows_[n][k]) return false;
    return true;
  }

 private:
  void shrink_to(int order) {
    if (order < this->order()) rows_.resize(static_cast<std::size_t>(order) + 1);
  }

  std::vector<std::vector<Rational>> rows_;
};

}  // namespace polyhex
