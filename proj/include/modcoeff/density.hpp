#pragma once

// Prime subsets cut out by coefficient thresholds, the multiplicative set
// N_f they generate, and desk-scale checks of the Mertens, harmonic-sum and
// Wirsing asymptotics.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modcoeff/arithmetic.hpp"
#include "modcoeff/bounds.hpp"
#include "modcoeff/coeff_engine.hpp"
#include "modcoeff/error.hpp"
#include "modcoeff/real.hpp"

namespace modcoeff {

namespace constants {

// Both are far too slowly convergent to recompute from their limit
// definitions; cross_check_constants() compares them against those limits.
inline constexpr std::string_view kEulerGamma = "0.57721566490153286060651209008240243104215933593992";
inline constexpr std::string_view kMertensB = "0.26149721284764278375542683860869585905156664826120";
inline constexpr std::string_view kProvenance = "50-digit decimal literal";

inline Real euler_gamma(mpfr_prec_t prec = kDefaultPrecision) { return Real::from_string(kEulerGamma, prec); }
inline Real mertens_b(mpfr_prec_t prec = kDefaultPrecision) { return Real::from_string(kMertensB, prec); }

}  // namespace constants

enum class ThresholdKind { AllPrimes, Nonvanishing, GTLowerBound };

constexpr std::string_view threshold_name(ThresholdKind t) {
  switch (t) {
    case ThresholdKind::AllPrimes: return "all";
    case ThresholdKind::Nonvanishing: return "nonvanishing";
    case ThresholdKind::GTLowerBound: return "gt";
  }
  return "";
}

/// chi_f on the primes up to x_limit. Immutable once built.
class PrimeClassification {
 public:
  PrimeClassification(std::string label, int weight, ThresholdKind kind, std::shared_ptr<const PrimeSieve> sieve,
                      std::vector<std::uint8_t> member)
      : label_(std::move(label)), weight_(weight), kind_(kind), sieve_(std::move(sieve)), member_(std::move(member)) {
    for (std::uint64_t p : sieve_->primes())
      if (member_[p]) members_.push_back(p);
  }

  const std::string& label() const { return label_; }
  int weight() const { return weight_; }
  ThresholdKind kind() const { return kind_; }
  std::uint64_t x_limit() const { return sieve_->limit(); }
  const PrimeSieve& sieve() const { return *sieve_; }
  const std::vector<std::uint64_t>& members() const { return members_; }

  bool is_member(std::uint64_t p) const {
    if (p > x_limit()) fail(Errc::Range, "prime " + std::to_string(p) + " beyond classification range");
    if (!sieve_->is_prime(p)) fail(Errc::Domain, std::to_string(p) + " is not prime");
    return member_[p] != 0;
  }

  /// Members and primes up to x (x within range).
  std::uint64_t member_count(std::uint64_t x) const {
    return static_cast<std::uint64_t>(std::upper_bound(members_.begin(), members_.end(), x) - members_.begin());
  }
  std::uint64_t prime_count(std::uint64_t x) const { return sieve_->pi(x); }

 private:
  std::string label_;
  int weight_;
  ThresholdKind kind_;
  std::shared_ptr<const PrimeSieve> sieve_;
  std::vector<std::uint8_t> member_;  // indexed by n; nonzero only at member primes
  std::vector<std::uint64_t> members_;
};

inline PrimeClassification all_primes(std::uint64_t x) {
  auto sieve = std::make_shared<const PrimeSieve>(x);
  std::vector<std::uint8_t> member(x + 1, 0);
  for (std::uint64_t p : sieve->primes()) member[p] = 1;
  return PrimeClassification("all-primes", 0, ThresholdKind::AllPrimes, std::move(sieve), std::move(member));
}

/// Membership from a coefficient table. For GTLowerBound a prime belongs
/// iff |lambda(p)| >= max(0, L1(p)); at p = 2 loglog p < 0, so 2 is a member.
inline PrimeClassification classify_primes(const CoeffTable& table, ThresholdKind kind,
                                           mpfr_prec_t prec = kDefaultPrecision) {
  const std::uint64_t x = table.limit();
  auto sieve = std::make_shared<const PrimeSieve>(x);
  std::vector<std::uint8_t> member(x + 1, 0);
  const int k = table.form().weight;
  for (std::uint64_t p : sieve->primes()) {
    const mpz_class& lambda = table[p];
    switch (kind) {
      case ThresholdKind::AllPrimes: member[p] = 1; break;
      case ThresholdKind::Nonvanishing: member[p] = lambda != 0; break;
      case ThresholdKind::GTLowerBound:
        if (p == 2)
          member[p] = 1;
        else if (lambda != 0)
          member[p] = log(Interval::from_mpz(abs(lambda), prec)).lo >= gt_lower(p, k, prec);
        break;
    }
  }
  return PrimeClassification(table.form().label, k, kind, std::move(sieve), std::move(member));
}

inline PrimeClassification classify_primes(const FormSpec& form, std::uint64_t x, ThresholdKind kind,
                                           const EngineLimits& limits = {}, mpfr_prec_t prec = kDefaultPrecision) {
  if (x < 2) fail(Errc::EmptyRange, "classification needs x >= 2");
  return classify_primes(coeff_table(form, x, limits), kind, prec);
}

/// chi_f(n) = prod_{p | n} chi_f(p).
inline int chi_f(std::uint64_t n, const PrimeClassification& cls) {
  if (n == 0) fail(Errc::Domain, "chi_f needs n >= 1");
  const Factorization fac = n <= cls.x_limit() ? cls.sieve().factorize(n) : factorize(n);
  for (const auto& f : fac)
    if (!cls.is_member(f.p)) return 0;
  return 1;
}

namespace detail {

// in_nf[n] = 1 iff every prime divisor of n is a member (n <= x).
inline std::vector<std::uint8_t> nf_indicator(const PrimeClassification& cls, std::uint64_t x) {
  if (x > cls.x_limit()) fail(Errc::Range, "x beyond classification range");
  std::vector<std::uint8_t> in(x + 1, 0);
  if (x >= 1) in[1] = 1;
  const PrimeSieve& s = cls.sieve();
  for (std::uint64_t n = 2; n <= x; ++n) {
    const std::uint64_t p = s.smallest_factor(n);
    in[n] = in[n / p] && cls.is_member(p);
  }
  return in;
}

}  // namespace detail

/// #{n <= x : every prime divisor of n is a member}.
inline std::uint64_t count_Nf(const PrimeClassification& cls, std::uint64_t x) {
  const auto in = detail::nf_indicator(cls, x);
  return static_cast<std::uint64_t>(std::count(in.begin(), in.end(), std::uint8_t{1}));
}

/// A left-hand side measured by a sum or product against the asymptotic
/// right-hand side with a supplied density tau.
struct AsymptoticComparison {
  std::uint64_t x = 0;
  double tau = 1.0;
  Real lhs;
  Real rhs;

  Real ratio() const { return lhs / rhs; }
  Real difference() const { return lhs - rhs; }
};

namespace detail {

inline void require_x(std::uint64_t x) {
  if (x < 3) fail(Errc::Domain, "asymptotic comparisons need x >= 3");
}

inline Real loglog(std::uint64_t x, mpfr_prec_t prec) { return log(log_of(x, prec)); }

}  // namespace detail

/// sum_{p <= x, p in P} 1/p  vs  tau (loglog x + B). `primes` ascending.
inline AsymptoticComparison harmonic_sum(const std::vector<std::uint64_t>& primes, std::uint64_t x, double tau,
                                         mpfr_prec_t prec = kDefaultPrecision) {
  detail::require_x(x);
  Real sum(prec), term(prec);
  for (std::uint64_t p : primes) {
    if (p > x) break;
    mpfr_ui_div(term.get(), 1, Real::from_u64(p, prec).get(), MPFR_RNDN);
    sum += term;
  }
  Real rhs = (detail::loglog(x, prec) + constants::mertens_b(prec)) * Real(tau, prec);
  return {x, tau, std::move(sum), std::move(rhs)};
}

inline AsymptoticComparison harmonic_sum(const PrimeClassification& cls, std::uint64_t x, double tau,
                                         mpfr_prec_t prec = kDefaultPrecision) {
  if (x > cls.x_limit()) fail(Errc::Range, "x beyond classification range");
  return harmonic_sum(cls.members(), x, tau, prec);
}

/// prod_{p <= x, p in P} (1 - 1/p)^{-1}  vs  (e^gamma log x)^tau.
inline AsymptoticComparison mertens_product(const std::vector<std::uint64_t>& primes, std::uint64_t x, double tau,
                                            mpfr_prec_t prec = kDefaultPrecision) {
  detail::require_x(x);
  Real prod(1L, prec);
  for (std::uint64_t p : primes) {
    if (p > x) break;
    prod *= Real::from_u64(p, prec) / Real::from_u64(p - 1, prec);
  }
  Real rhs = pow(exp(constants::euler_gamma(prec)) * log_of(x, prec), Real(tau, prec));
  return {x, tau, std::move(prod), std::move(rhs)};
}

inline AsymptoticComparison mertens_product(const PrimeClassification& cls, std::uint64_t x, double tau,
                                            mpfr_prec_t prec = kDefaultPrecision) {
  if (x > cls.x_limit()) fail(Errc::Range, "x beyond classification range");
  return mertens_product(cls.members(), x, tau, prec);
}

/// The two literals against their limit definitions at x:
///   sum log p/(p-1) - log x  -> -gamma,   sum 1/p - loglog x -> B.
struct ConstantsCrossCheck {
  std::uint64_t x = 0;
  Real gamma_limit;  // approaches -gamma
  Real b_limit;
  Real gamma_error;  // |gamma_limit + gamma|
  Real b_error;
};

inline ConstantsCrossCheck cross_check_constants(const PrimeSieve& sieve, std::uint64_t x,
                                                 mpfr_prec_t prec = kDefaultPrecision) {
  detail::require_x(x);
  if (x > sieve.limit()) fail(Errc::Range, "x beyond sieve range");
  Real s_log(prec), s_inv(prec), term(prec);
  for (std::uint64_t p : sieve.primes()) {
    if (p > x) break;
    s_log += log_of(p, prec) / Real::from_u64(p - 1, prec);
    mpfr_ui_div(term.get(), 1, Real::from_u64(p, prec).get(), MPFR_RNDN);
    s_inv += term;
  }
  ConstantsCrossCheck c;
  c.x = x;
  c.gamma_limit = s_log - log_of(x, prec);
  c.b_limit = s_inv - detail::loglog(x, prec);
  c.gamma_error = abs(c.gamma_limit + constants::euler_gamma(prec));
  c.b_error = abs(c.b_limit - constants::mertens_b(prec));
  return c;
}

/// A nonnegative multiplicative function given on prime powers p^e, e >= 1,
/// with the growth hypothesis f(p^e) <= growth^e, growth < 2.
struct MultiplicativeSpec {
  std::string name;
  std::function<double(std::uint64_t p, unsigned e)> at_prime_power;
  double growth = 1.0;
};

inline MultiplicativeSpec constant_one() {
  return {"one", [](std::uint64_t, unsigned) { return 1.0; }, 1.0};
}

inline MultiplicativeSpec indicator_of(const PrimeClassification& cls) {
  auto members = std::make_shared<std::vector<std::uint64_t>>(cls.members());
  return {"chi_f[" + cls.label() + "," + std::string(threshold_name(cls.kind())) + "]",
          [members](std::uint64_t p, unsigned) {
            return std::binary_search(members->begin(), members->end(), p) ? 1.0 : 0.0;
          },
          1.0};
}

struct WirsingReport {
  std::string function;
  std::uint64_t x = 0;
  double tau = 1.0;
  Real lhs;            // sum_{n <= x} f(n)
  Real euler_product;  // prod_{p <= x} sum_e f(p^e)/p^e
  Real constant;       // 1 / (e^{gamma tau} Gamma(tau))
  Real rhs;

  Real ratio() const { return rhs / lhs; }
};

inline void check_wirsing_hypothesis(const MultiplicativeSpec& f) {
  if (!f.at_prime_power) fail(Errc::InvalidArgument, "multiplicative function has no values");
  if (!(f.growth > 0 && f.growth < 2)) fail(Errc::Hypothesis, "growth constant must lie in (0, 2)");
  for (std::uint64_t p = 2; p <= 1000; ++p) {
    if (!is_prime(p)) continue;
    double bound = 1.0;
    for (unsigned e = 1; e <= 8; ++e) {
      bound *= f.growth;
      const double v = f.at_prime_power(p, e);
      if (!(v >= 0) || v > bound * (1 + 1e-12))
        fail(Errc::Hypothesis, f.name + " violates 0 <= f(p^e) <= c^e at p=" + std::to_string(p) +
                                   ", e=" + std::to_string(e));
    }
  }
}

inline WirsingReport wirsing_eval(const MultiplicativeSpec& f, std::uint64_t x, double tau,
                                  mpfr_prec_t prec = kDefaultPrecision) {
  detail::require_x(x);
  if (!(tau > 0)) fail(Errc::Domain, "tau must be positive");
  check_wirsing_hypothesis(f);
  const PrimeSieve sieve(x);

  // f(n) by the smallest-prime-factor recursion f(n) = f(p^e) f(n / p^e).
  std::vector<double> value(x + 1, 0.0);
  value[1] = 1.0;
  for (std::uint64_t n = 2; n <= x; ++n) {
    const std::uint64_t p = sieve.smallest_factor(n);
    std::uint64_t rest = n;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    value[n] = f.at_prime_power(p, e) * value[rest];
  }
  Real lhs(prec);
  for (std::uint64_t n = 1; n <= x; ++n) lhs += Real(value[n], prec);

  const Real tolerance(1e-30, prec);
  Real product(1L, prec);
  for (std::uint64_t p : sieve.primes()) {
    Real factor(1L, prec);
    Real p_pow(1L, prec);
    const Real pr = Real::from_u64(p, prec);
    double envelope = 1.0;  // (growth / p)^e bounds f(p^e)/p^e
    for (unsigned e = 1; e <= 100000; ++e) {
      p_pow *= pr;
      envelope *= f.growth / static_cast<double>(p);
      factor += Real(f.at_prime_power(p, e), prec) / p_pow;
      if (envelope < 1e-30 && Real(envelope, prec) < tolerance * factor) break;
    }
    product *= factor;
  }

  WirsingReport r;
  r.function = f.name;
  r.x = x;
  r.tau = tau;
  const Real t(tau, prec);
  r.constant = Real(1L, prec) / (exp(constants::euler_gamma(prec) * t) * gamma(t));
  const Real lx = log_of(x, prec);
  r.rhs = r.constant * Real::from_u64(x, prec) / lx * product;
  r.lhs = std::move(lhs);
  r.euler_product = std::move(product);
  return r;
}

struct DensityCheckpoint {
  std::uint64_t x = 0;
  std::uint64_t pi_x = 0;
  std::uint64_t count_pf = 0;
  std::uint64_t nf_count = 0;
  Real empirical_tau;   // count_pf / pi_x
  Real mertens_ratio;   // with the model tau
  Real harmonic_diff;   // lhs - rhs with the model tau
};

struct DensityReport {
  std::string form;
  int weight = 0;
  ThresholdKind kind = ThresholdKind::AllPrimes;
  std::uint64_t x = 0;
  std::uint64_t pi_x = 0;
  std::uint64_t count_pf = 0;
  std::uint64_t nf_count = 0;
  double model_tau = 1.0;  // fed into the asymptotic formulas
  Real empirical_tau;      // measured from the classification
  AsymptoticComparison mertens;
  AsymptoticComparison harmonic;
  std::optional<WirsingReport> wirsing;
  std::vector<DensityCheckpoint> checkpoints;
};

/// Powers of ten below x, then x itself.
inline std::vector<std::uint64_t> decade_checkpoints(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 1000; c < x; c *= 10) out.push_back(c);
  out.push_back(x);
  return out;
}

inline DensityReport density_report(const PrimeClassification& cls, std::uint64_t x, double model_tau,
                                    bool with_wirsing, mpfr_prec_t prec = kDefaultPrecision) {
  detail::require_x(x);
  DensityReport r;
  r.form = cls.label();
  r.weight = cls.weight();
  r.kind = cls.kind();
  r.x = x;
  r.model_tau = model_tau;
  r.pi_x = cls.prime_count(x);
  r.count_pf = cls.member_count(x);
  r.empirical_tau = Real::from_u64(r.count_pf, prec) / Real::from_u64(r.pi_x, prec);

  const auto in = detail::nf_indicator(cls, x);
  std::vector<std::uint64_t> nf_prefix(x + 1, 0);
  for (std::uint64_t n = 1; n <= x; ++n) nf_prefix[n] = nf_prefix[n - 1] + in[n];
  r.nf_count = nf_prefix[x];

  r.mertens = mertens_product(cls, x, model_tau, prec);
  r.harmonic = harmonic_sum(cls, x, model_tau, prec);
  if (with_wirsing) r.wirsing = wirsing_eval(indicator_of(cls), x, model_tau, prec);

  for (std::uint64_t c : decade_checkpoints(x)) {
    DensityCheckpoint cp;
    cp.x = c;
    cp.pi_x = cls.prime_count(c);
    cp.count_pf = cls.member_count(c);
    cp.nf_count = nf_prefix[c];
    cp.empirical_tau = Real::from_u64(cp.count_pf, prec) / Real::from_u64(cp.pi_x, prec);
    cp.mertens_ratio = mertens_product(cls, c, model_tau, prec).ratio();
    cp.harmonic_diff = harmonic_sum(cls, c, model_tau, prec).difference();
    r.checkpoints.push_back(std::move(cp));
  }
  return r;
}

/// omega(n) loglog n / log n, the ratio bounded by 1 + eps for large n.
inline Real omega_ratio(std::uint64_t n, mpfr_prec_t prec = kDefaultPrecision) {
  if (n < 3) fail(Errc::Domain, "omega_ratio needs n >= 3");
  return Real(static_cast<long>(omega(n)), prec) * detail::loglog(n, prec) / log_of(n, prec);
}

struct HardyRamanujanReport {
  std::uint64_t x = 0;
  std::uint64_t argmax = 0;
  unsigned omega_at_argmax = 0;
  Real max_ratio;
};

inline HardyRamanujanReport hr_bounds_check(std::uint64_t x, mpfr_prec_t prec = kDefaultPrecision) {
  if (x < 100) fail(Errc::Domain, "hr_bounds_check needs x >= 100");
  const PrimeSieve sieve(x);
  std::vector<std::uint8_t> w(x + 1, 0);
  for (std::uint64_t n = 2; n <= x; ++n) {
    const std::uint64_t p = sieve.smallest_factor(n);
    const std::uint64_t m = n / p;
    w[n] = static_cast<std::uint8_t>(w[m] + (m % p != 0));
  }
  // Screen in double, then evaluate the winner exactly.
  double best = -1;
  std::uint64_t arg = 3;
  for (std::uint64_t n = 3; n <= x; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const double v = w[n] * std::log(ln) / ln;
    if (v > best) {
      best = v;
      arg = n;
    }
  }
  return {x, arg, w[arg], omega_ratio(arg, prec)};
}

}  // namespace modcoeff
