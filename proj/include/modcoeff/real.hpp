#pragma once

// RAII handle over an MPFR value plus a closed interval type with
// outward-rounded endpoints. All non-interval operations round to nearest
// at the larger of the operand precisions.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "modcoeff/error.hpp"

namespace modcoeff {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(long value, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(double value, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real from_mpz(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
    return r;
  }
  static Real from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
  }
  static Real from_u64(std::uint64_t v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui(r.v_, static_cast<unsigned long>(v), MPFR_RNDN);
    return r;
  }
  static Real from_string(std::string_view text, mpfr_prec_t prec) {
    Real r(prec);
    std::string s(text);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(r.v_))
      fail(Errc::InvalidArgument, "not a decimal real: " + s);
    return r;
  }
  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  /// Exact value of a finite Real as a rational.
  mpq_class to_mpq() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

  /// Scientific notation with `digits` digits after the point, e.g. "1.61e+29".
  std::string sci(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  Real& operator+=(const Real& o) { return apply(mpfr_add, o); }
  Real& operator-=(const Real& o) { return apply(mpfr_sub, o); }
  Real& operator*=(const Real& o) { return apply(mpfr_mul, o); }
  Real& operator/=(const Real& o) { return apply(mpfr_div, o); }

  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long b) {
    mpfr_mul_si(a.v_, a.v_, b, MPFR_RNDN);
    return a;
  }
  friend Real operator/(Real a, long b) {
    mpfr_div_si(a.v_, a.v_, b, MPFR_RNDN);
    return a;
  }
  friend Real operator+(Real a, long b) {
    mpfr_add_si(a.v_, a.v_, b, MPFR_RNDN);
    return a;
  }
  friend Real operator-(Real a, long b) {
    mpfr_sub_si(a.v_, a.v_, b, MPFR_RNDN);
    return a;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) {
    return mpfr_greaterequal_p(a.v_, b.v_) != 0;
  }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  Real& apply(BinaryOp op, const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

namespace detail {
using UnaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
inline Real unary(UnaryOp op, const Real& x) {
  Real r(x.precision());
  op(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline Real log(const Real& x) { return detail::unary(mpfr_log, x); }
inline Real exp(const Real& x) { return detail::unary(mpfr_exp, x); }
inline Real sqrt(const Real& x) { return detail::unary(mpfr_sqrt, x); }
inline Real sin(const Real& x) { return detail::unary(mpfr_sin, x); }
inline Real cos(const Real& x) { return detail::unary(mpfr_cos, x); }
inline Real acos(const Real& x) { return detail::unary(mpfr_acos, x); }
inline Real abs(const Real& x) { return detail::unary(mpfr_abs, x); }
inline Real gamma(const Real& x) { return detail::unary(mpfr_gamma, x); }

inline Real pow(const Real& base, const Real& e) {
  Real r(std::max(base.precision(), e.precision()));
  mpfr_pow(r.get(), base.get(), e.get(), MPFR_RNDN);
  return r;
}

/// log of a positive integer at the given precision.
inline Real log_of(const mpz_class& z, mpfr_prec_t prec) {
  Real r(prec);
  const Real zr = Real::from_mpz(z, prec + 16);
  mpfr_log(r.get(), zr.get(), MPFR_RNDN);
  return r;
}

inline Real log_of(std::uint64_t n, mpfr_prec_t prec) {
  return log_of(mpz_class(static_cast<unsigned long>(n)), prec);
}

/// Closed interval [lo, hi]; endpoints are always rounded outward.
struct Interval {
  Real lo;
  Real hi;

  static Interval from_mpz(const mpz_class& z, mpfr_prec_t prec) {
    return {Real::from_mpz(z, prec, MPFR_RNDD), Real::from_mpz(z, prec, MPFR_RNDU)};
  }
  static Interval from_mpq(const mpq_class& q, mpfr_prec_t prec) {
    return {Real::from_mpq(q, prec, MPFR_RNDD), Real::from_mpq(q, prec, MPFR_RNDU)};
  }

  bool contains(const Real& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

  Real width() const {
    Real w(hi.precision());
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    return w;
  }
  Real mid() const {
    Real m(hi.precision());
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
  }
};

/// log over a positive interval.
inline Interval log(const Interval& x) {
  Interval r{Real(x.lo.precision()), Real(x.hi.precision())};
  mpfr_log(r.lo.get(), x.lo.get(), MPFR_RNDD);
  mpfr_log(r.hi.get(), x.hi.get(), MPFR_RNDU);
  return r;
}

/// Product of two intervals with nonnegative endpoints.
inline Interval mul_nonneg(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = std::max(a.lo.precision(), b.lo.precision());
  Interval r{Real(prec), Real(prec)};
  mpfr_mul(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_mul(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return r;
}

}  // namespace modcoeff
