#pragma once

// Exact Fourier coefficients of level-one style forms: Ramanujan's Delta via
// its eta-product q-expansion, elliptic curves via point counting, and
// user-supplied tables. Prime powers go through the Hecke recurrence, general
// n through multiplicativity.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modcoeff/arithmetic.hpp"
#include "modcoeff/error.hpp"
#include "modcoeff/real.hpp"

namespace modcoeff {

enum class FormKind { Delta, EllipticCurve, UserTable };

/// Which modular form the coefficients belong to.
struct FormSpec {
  FormKind kind = FormKind::Delta;
  long ec_a = 0;
  long ec_b = 0;
  int weight = 12;
  std::string label = "delta";
  // UserTable only: values[n] = lambda(n), values[0] unused.
  std::shared_ptr<const std::vector<mpz_class>> user_values;

  static FormSpec delta() { return FormSpec{}; }

  /// y^2 = x^3 + a x + b. The weight defaults to 2 (Hasse normalization).
  static FormSpec elliptic_curve(long a, long b, int weight = 2) {
    FormSpec f;
    f.kind = FormKind::EllipticCurve;
    f.ec_a = a;
    f.ec_b = b;
    f.weight = weight;
    f.label = "ec:a=" + std::to_string(a) + ",b=" + std::to_string(b);
    f.validate();
    return f;
  }

  /// `lambda[i]` is the coefficient of q^(i+1).
  static FormSpec user_table(int weight, std::vector<mpz_class> lambda, std::string label = "user") {
    if (lambda.empty()) fail(Errc::EmptyRange, "user table is empty");
    FormSpec f;
    f.kind = FormKind::UserTable;
    f.weight = weight;
    f.label = std::move(label);
    lambda.insert(lambda.begin(), mpz_class(0));
    f.user_values = std::make_shared<const std::vector<mpz_class>>(std::move(lambda));
    f.validate();
    return f;
  }

  /// -16(4a^3 + 27b^2) for elliptic curves.
  mpz_class discriminant() const {
    const mpz_class a(ec_a), b(ec_b);
    return -16 * (4 * a * a * a + 27 * b * b);
  }

  std::uint64_t user_limit() const { return user_values ? user_values->size() - 1 : 0; }

  void validate() const {
    if (weight < 1) fail(Errc::InvalidArgument, "weight must be >= 1");
    if (kind == FormKind::Delta && weight != 12) fail(Errc::InvalidArgument, "Delta has weight 12");
    if (kind == FormKind::EllipticCurve && discriminant() == 0)
      fail(Errc::InvalidArgument, "singular curve: 4a^3 + 27b^2 = 0");
    if (kind == FormKind::UserTable && !user_values) fail(Errc::InvalidArgument, "user table missing");
  }
};

/// p prime, m >= 0.
struct PrimePower {
  std::uint64_t p;
  unsigned m;

  PrimePower(std::uint64_t prime, unsigned exponent) : p(prime), m(exponent) {
    if (!is_prime(prime)) fail(Errc::Domain, std::to_string(prime) + " is not prime");
  }

  mpz_class value() const {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), p, m);
    return v;
  }
};

struct EngineLimits {
  std::uint64_t table_cap = 100'000;
  std::uint64_t point_count_cap = 1'000'000;
  std::uint64_t factor_budget = 50'000'000;
};

/// Immutable table of lambda(1..N).
class CoeffTable {
 public:
  CoeffTable(FormSpec form, std::vector<mpz_class> values) : form_(std::move(form)), values_(std::move(values)) {
    if (values_.size() < 2) fail(Errc::EmptyRange, "coefficient table must hold lambda(1)");
  }

  const FormSpec& form() const { return form_; }
  std::uint64_t limit() const { return values_.size() - 1; }

  const mpz_class& at(std::uint64_t n) const {
    if (n == 0 || n > limit()) fail(Errc::Range, "index " + std::to_string(n) + " outside table");
    return values_[n];
  }
  const mpz_class& operator[](std::uint64_t n) const { return values_[n]; }

 private:
  FormSpec form_;
  std::vector<mpz_class> values_;
};

namespace detail {

inline mpz_class pow_u64(std::uint64_t base, unsigned long e) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), base, e);
  return v;
}

inline std::uint64_t reduce_mod(long v, std::uint64_t p) {
  const long r = v % static_cast<long>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(p) : r);
}

// p + 1 - #E(F_p) for the projective model y^2 = x^3 + ax + b, singular or not.
inline long count_trace(long a, long b, std::uint64_t p) {
  if (p == 2) return 0;  // y^2 = v has exactly one root in F_2 for every v
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t y = 1; y <= p / 2; ++y) chi[mul_mod(y, y, p)] = 1;
  const std::uint64_t ar = reduce_mod(a, p), br = reduce_mod(b, p);
  long sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t x2 = mul_mod(x, x, p);
    const std::uint64_t rhs = (mul_mod(x2 + ar, x, p) + br) % p;
    sum += chi[rhs];
  }
  return -sum;
}

inline bool is_bad_prime(const FormSpec& form, std::uint64_t p) {
  return mpz_divisible_ui_p(form.discriminant().get_mpz_t(), p) != 0;
}

}  // namespace detail

/// tau(1..N) from Delta = q * prod (1 - q^n)^24.
///
/// eta^3 is the sparse series sum (-1)^m (2m+1) q^{m(m+1)/2}. Squaring it
/// gives eta^6 densely; six more sparse multiplications give eta^24. Cost is
/// O(N^{3/2}) big-integer multiply-adds.
inline CoeffTable tau_series(std::uint64_t n_max, const EngineLimits& limits = {}) {
  if (n_max == 0) fail(Errc::EmptyRange, "tau_series needs N >= 1");
  if (n_max > limits.table_cap)
    fail(Errc::Resource, "tau_series N=" + std::to_string(n_max) + " exceeds table cap " +
                             std::to_string(limits.table_cap));
  const std::size_t len = n_max;  // eta^24 coefficients at q^0 .. q^{N-1}

  struct Term {
    std::size_t exp;
    long coef;
  };
  std::vector<Term> theta;
  for (std::size_t m = 0; m * (m + 1) / 2 < len; ++m)
    theta.push_back({m * (m + 1) / 2, (m % 2 ? -1L : 1L) * static_cast<long>(2 * m + 1)});

  std::vector<long long> eta6(len, 0);
  for (const auto& s : theta)
    for (const auto& t : theta) {
      if (s.exp + t.exp >= len) break;
      eta6[s.exp + t.exp] += static_cast<long long>(s.coef) * t.coef;
    }

  std::vector<mpz_class> cur(len), next(len);
  for (std::size_t i = 0; i < len; ++i) cur[i] = static_cast<long>(eta6[i]);

  for (int step = 0; step < 6; ++step) {
    for (std::size_t i = 0; i < len; ++i) {
      mpz_ptr out = next[i].get_mpz_t();
      mpz_set_ui(out, 0);
      for (const auto& t : theta) {
        if (t.exp > i) break;
        mpz_srcptr in = cur[i - t.exp].get_mpz_t();
        if (t.coef > 0)
          mpz_addmul_ui(out, in, static_cast<unsigned long>(t.coef));
        else
          mpz_submul_ui(out, in, static_cast<unsigned long>(-t.coef));
      }
    }
    cur.swap(next);
  }

  std::vector<mpz_class> values(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) values[n] = std::move(cur[n - 1]);
  return CoeffTable(FormSpec::delta(), std::move(values));
}

/// Trace of Frobenius a_p = p + 1 - #E(F_p) at a prime of good reduction.
inline long ec_trace(long a, long b, std::uint64_t p, const EngineLimits& limits = {}) {
  if (!is_prime(p)) fail(Errc::Domain, std::to_string(p) + " is not prime");
  if (p > limits.point_count_cap)
    fail(Errc::Resource, "p=" + std::to_string(p) + " exceeds point-count cap " +
                             std::to_string(limits.point_count_cap));
  const mpz_class disc = 16 * (4 * mpz_class(a) * a * a + 27 * mpz_class(b) * b);
  if (mpz_divisible_ui_p(disc.get_mpz_t(), p))
    fail(Errc::BadReduction, "curve has bad reduction at p=" + std::to_string(p));
  const long ap = detail::count_trace(a, b, p);
  if (static_cast<unsigned __int128>(static_cast<__int128>(ap) * ap) > 4 * static_cast<unsigned __int128>(p))
    fail(Errc::InvariantViolation, "Hasse bound violated at p=" + std::to_string(p));
  return ap;
}

/// lambda(p^m) from lambda(p) via lambda(p^{j+1}) = lambda(p) lambda(p^j) - p^{k-1} lambda(p^{j-1}).
inline mpz_class hecke_prime_power(const mpz_class& lambda_p, const PrimePower& pp, int k) {
  if (pp.m == 0) return 1;
  const mpz_class scale = detail::pow_u64(pp.p, static_cast<unsigned long>(k - 1));
  mpz_class prev = 1, cur = lambda_p;
  for (unsigned j = 1; j < pp.m; ++j) {
    mpz_class nxt = lambda_p * cur - scale * prev;
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  return cur;
}

namespace detail {

// lambda(p^m) for an elliptic-curve form; bad primes use a_p^m.
inline mpz_class ec_prime_power(const FormSpec& form, std::uint64_t p, unsigned m, const EngineLimits& limits) {
  if (p > limits.point_count_cap)
    fail(Errc::Resource, "p=" + std::to_string(p) + " exceeds point-count cap");
  if (is_bad_prime(form, p)) {
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), mpz_class(count_trace(form.ec_a, form.ec_b, p)).get_mpz_t(), m);
    return v;
  }
  return hecke_prime_power(ec_trace(form.ec_a, form.ec_b, p, limits), PrimePower(p, m), form.weight);
}

}  // namespace detail

/// lambda(n) = prod over p^v || n of lambda(p^v), exact.
inline mpz_class coeff_at(const FormSpec& form, std::uint64_t n, const EngineLimits& limits = {}) {
  if (n == 0) fail(Errc::EmptyRange, "coefficients are indexed from n = 1");
  if (form.kind == FormKind::UserTable && n <= form.user_limit()) return (*form.user_values)[n];

  const Factorization fac = factorize(n, limits.factor_budget);
  mpz_class result = 1;
  switch (form.kind) {
    case FormKind::Delta: {
      if (fac.empty()) return 1;
      const CoeffTable tau = tau_series(fac.back().p, limits);
      for (const auto& f : fac) result *= hecke_prime_power(tau[f.p], PrimePower(f.p, f.exponent), 12);
      break;
    }
    case FormKind::EllipticCurve:
      for (const auto& f : fac) result *= detail::ec_prime_power(form, f.p, f.exponent, limits);
      break;
    case FormKind::UserTable:
      for (const auto& f : fac) {
        if (f.p > form.user_limit())
          fail(Errc::Range, "user table has no lambda(" + std::to_string(f.p) + ")");
        result *= hecke_prime_power((*form.user_values)[f.p], PrimePower(f.p, f.exponent), form.weight);
      }
      break;
  }
  return result;
}

/// Full table lambda(1..N) for any form.
inline CoeffTable coeff_table(const FormSpec& form, std::uint64_t n_max, const EngineLimits& limits = {}) {
  if (n_max == 0) fail(Errc::EmptyRange, "table needs N >= 1");
  if (form.kind == FormKind::Delta) return tau_series(n_max, limits);
  if (form.kind == FormKind::UserTable) {
    if (n_max > form.user_limit()) fail(Errc::Range, "user table shorter than requested limit");
    std::vector<mpz_class> values(form.user_values->begin(), form.user_values->begin() + n_max + 1);
    return CoeffTable(form, std::move(values));
  }
  if (n_max > limits.table_cap) fail(Errc::Resource, "table limit exceeds cap");

  const PrimeSieve sieve(n_max);
  std::vector<mpz_class> values(n_max + 1);
  values[1] = 1;
  for (std::uint64_t p : sieve.primes()) {
    const bool bad = detail::is_bad_prime(form, p);
    const mpz_class ap = bad ? mpz_class(detail::count_trace(form.ec_a, form.ec_b, p))
                             : mpz_class(ec_trace(form.ec_a, form.ec_b, p, limits));
    const mpz_class scale = bad ? mpz_class(0) : detail::pow_u64(p, static_cast<unsigned long>(form.weight - 1));
    std::uint64_t q = p, q_prev = 1, q_prev2 = 1;
    values[p] = ap;
    while (q <= n_max / p) {
      q_prev2 = q_prev;
      q_prev = q;
      q *= p;
      values[q] = ap * values[q_prev] - scale * values[q_prev2];
    }
  }
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint64_t p = sieve.smallest_factor(n);
    std::uint64_t pv = 1, rest = n;
    while (rest % p == 0) {
      rest /= p;
      pv *= p;
    }
    if (rest != 1) values[n] = values[pv] * values[rest];
  }
  return CoeffTable(form, std::move(values));
}

/// Exact Deligne check |lambda| <= d(n) n^{(k-1)/2}, compared as squares.
inline bool within_deligne_bound(const mpz_class& lambda, std::uint64_t n, int k) {
  const mpz_class d(static_cast<unsigned long>(divisor_count(n)));
  return lambda * lambda <= d * d * detail::pow_u64(n, static_cast<unsigned long>(k - 1));
}

/// theta_p in [0, pi] with lambda(p) = 2 p^{(k-1)/2} cos(theta_p).
struct FrobeniusAngle {
  std::uint64_t p = 2;
  int weight = 12;
  mpz_class lambda_p;
  Real theta;
  mpfr_prec_t precision_bits = kDefaultPrecision;
  // Set when theta = pi * first / second exactly (4cos^2 theta in {0,1,2,3,4}).
  std::optional<std::pair<int, int>> pi_multiple;

  bool degenerate() const {
    return pi_multiple && (pi_multiple->first == 0 || pi_multiple->first == pi_multiple->second);
  }
};

inline FrobeniusAngle frobenius_angle(const mpz_class& lambda_p, std::uint64_t p, int k,
                                      mpfr_prec_t precision_bits = kDefaultPrecision) {
  if (!is_prime(p)) fail(Errc::Domain, std::to_string(p) + " is not prime");
  if (precision_bits < MPFR_PREC_MIN) fail(Errc::InvalidArgument, "precision too small");
  const mpz_class scale2 = detail::pow_u64(p, static_cast<unsigned long>(k - 1));  // p^{k-1}
  const mpz_class sq = lambda_p * lambda_p;
  if (sq > 4 * scale2)
    fail(Errc::DeligneViolation, "|lambda(p)| exceeds 2p^{(k-1)/2} at p=" + std::to_string(p));

  FrobeniusAngle angle;
  angle.p = p;
  angle.weight = k;
  angle.lambda_p = lambda_p;
  angle.precision_bits = precision_bits;

  const bool positive = sgn(lambda_p) >= 0;
  for (int j = 0; j <= 4; ++j) {
    if (sq != j * scale2) continue;
    static constexpr std::pair<int, int> kPositive[] = {{1, 2}, {1, 3}, {1, 4}, {1, 6}, {0, 1}};
    static constexpr std::pair<int, int> kNegative[] = {{1, 2}, {2, 3}, {3, 4}, {5, 6}, {1, 1}};
    angle.pi_multiple = positive ? kPositive[j] : kNegative[j];
    break;
  }

  const mpfr_prec_t wp = precision_bits + 32;
  Real theta(wp);
  if (angle.pi_multiple) {
    theta = Real::pi(wp) * static_cast<long>(angle.pi_multiple->first) / static_cast<long>(angle.pi_multiple->second);
  } else {
    const Real c = Real::from_mpz(lambda_p, wp) / (sqrt(Real::from_mpz(scale2, wp)) * 2L);
    theta = acos(c);
  }
  angle.theta = Real(precision_bits);
  mpfr_set(angle.theta.get(), theta.get(), MPFR_RNDN);
  return angle;
}

/// lambda(p^m) = p^{(k-1)m/2} sin((m+1) theta) / sin(theta), evaluated in
/// floating point at the angle's precision.
inline Real binet_eval(const FrobeniusAngle& angle, unsigned m) {
  if (angle.degenerate())
    fail(Errc::DegenerateAngle, "theta in {0, pi}: the Hecke polynomial has a repeated root");
  Real out(angle.precision_bits);
  if (angle.pi_multiple && (static_cast<long>(m + 1) * angle.pi_multiple->first) % angle.pi_multiple->second == 0)
    return out;  // exact zero
  const mpfr_prec_t wp = angle.precision_bits + 32;
  Real theta(wp);
  mpfr_set(theta.get(), angle.theta.get(), MPFR_RNDN);
  const Real scale =
      sqrt(Real::from_mpz(detail::pow_u64(angle.p, static_cast<unsigned long>(angle.weight - 1) * m), wp));
  const Real value = scale * sin(theta * static_cast<long>(m + 1)) / sin(theta);
  mpfr_set(out.get(), value.get(), MPFR_RNDN);
  return out;
}

}  // namespace modcoeff
