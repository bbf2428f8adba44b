#pragma once

// Outward-rounded interval arithmetic on MPFR numbers.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace polyhex {

// RAII MPFR number.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(double x, mpfr_prec_t prec) : Real(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const std::string& s, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) : Real(prec) {
    if (mpfr_set_str(v_, s.c_str(), 10, rnd) != 0) throw std::invalid_argument("bad real literal: " + s);
  }
  Real(const Real& o) : Real(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept : Real(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }

  // Decimal text with `digits` significant digits, rounded in direction `rnd`.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const {
    char* buf = nullptr;
    const char* fmt = rnd == MPFR_RNDD ? "%.*RDg" : rnd == MPFR_RNDU ? "%.*RUg" : "%.*RNg";
    if (mpfr_asprintf(&buf, fmt, digits, v_) < 0) throw std::runtime_error("mpfr_asprintf failed");
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

inline Real midpoint(const Real& a, const Real& b) {
  Real r(std::max(a.precision(), b.precision()) + 1);
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);  // exact with one extra bit
  mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
  return r;
}

// Closed interval [lo, hi] with lo <= hi.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec) {}
  Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("interval with lo > hi");
  }

  static Interval point(const Real& x, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set(r.lo_.get(), x.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), x.get(), MPFR_RNDU);
    return r;
  }
  static Interval integer(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
  }
  static Interval rational(const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static Interval integer(const mpz_class& z, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t precision() const { return std::max(lo_.precision(), hi_.precision()); }

  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }
  // +1 / -1 when the sign is certain, 0 otherwise.
  int certain_sign() const { return positive() ? 1 : negative() ? -1 : 0; }

  bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

  Real width() const {
    Real w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
  }

  Real mid() const { return midpoint(lo_, hi_); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t prec = std::max(a.precision(), b.precision());
    Interval r(prec);
    const mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
    const mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
    Real t(prec);
    bool first = true;
    for (auto x : as)
      for (auto y : bs) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }
  // b must not contain zero.
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
    const mpfr_prec_t prec = std::max(a.precision(), b.precision());
    Interval inv(prec);
    mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
    return a * inv;
  }

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  // Convex hull.
  friend Interval hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

  // Widens the upper end by a non-negative amount (a tail bound).
  Interval plus_upper(const Real& extra) const {
    Interval r = *this;
    mpfr_add(r.hi_.get(), hi_.get(), extra.get(), MPFR_RNDU);
    return r;
  }

  std::string to_string(int digits) const {
    return "[" + lo_.to_string(digits, MPFR_RNDD) + ", " + hi_.to_string(digits, MPFR_RNDU) + "]";
  }

 private:
  Real lo_, hi_;
};

// Sum of c_k x^k over integer coefficients, by Horner in interval arithmetic.
template <typename Coeffs>
Interval eval_polynomial(const Coeffs& coeffs, const Interval& x) {
  const mpfr_prec_t prec = x.precision();
  Interval acc = Interval::integer(0L, prec);
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it)
    acc = acc * x + Interval::integer(static_cast<long>(*it), prec);
  return acc;
}

}  // namespace polyhex
