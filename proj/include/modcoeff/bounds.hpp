#pragma once

// Upper and lower envelopes for |lambda(n)|, all evaluated in log scale, and
// a harness that sandwiches exact coefficients between them.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "modcoeff/arithmetic.hpp"
#include "modcoeff/coeff_engine.hpp"
#include "modcoeff/error.hpp"
#include "modcoeff/real.hpp"

namespace modcoeff {

enum class BoundKind { Hecke, Deligne, GtLower, Thm1Lower, Thm2Lower };

inline constexpr std::array<BoundKind, 5> kAllBounds{BoundKind::Hecke, BoundKind::Deligne, BoundKind::GtLower,
                                                     BoundKind::Thm1Lower, BoundKind::Thm2Lower};

constexpr std::string_view bound_name(BoundKind b) {
  switch (b) {
    case BoundKind::Hecke: return "hecke";
    case BoundKind::Deligne: return "deligne";
    case BoundKind::GtLower: return "gt_lower";
    case BoundKind::Thm1Lower: return "thm1_lower";
    case BoundKind::Thm2Lower: return "thm2_lower";
  }
  return "";
}

constexpr bool is_upper_bound(BoundKind b) { return b == BoundKind::Hecke || b == BoundKind::Deligne; }

struct BoundOptions {
  double epsilon = 0.01;
  mpfr_prec_t precision = kDefaultPrecision;
  unsigned threads = 1;
};

namespace detail {

inline Real epsilon_real(double epsilon, mpfr_prec_t prec) {
  if (!(epsilon > 0)) fail(Errc::InvalidArgument, "epsilon must be positive");
  return Real(epsilon, prec);
}

}  // namespace detail

/// log(p^{(k-1)m}); the Hecke estimate with constant c = 1.
inline Real hecke_upper(const PrimePower& pp, int k, mpfr_prec_t prec = kDefaultPrecision) {
  if (pp.m < 1) fail(Errc::Domain, "hecke_upper needs m >= 1");
  return log_of(pp.p, prec) * static_cast<long>((k - 1) * static_cast<long>(pp.m));
}

/// log(d(n) n^{(k-1)/2}).
inline Real deligne_upper(std::uint64_t n, int k, mpfr_prec_t prec = kDefaultPrecision) {
  if (n == 0) fail(Errc::Domain, "deligne_upper needs n >= 1");
  return log_of(divisor_count(n), prec) + log_of(n, prec) * static_cast<long>(k - 1) / 2L;
}

/// log(p^{(k-1)/2} loglog p / (log p)^{1/2}) at a prime p >= 3.
inline Real gt_lower(std::uint64_t p, int k, mpfr_prec_t prec = kDefaultPrecision) {
  if (p < 3) fail(Errc::Domain, "gt_lower needs p >= 3 so that loglog p > 0");
  if (!is_prime(p)) fail(Errc::Domain, std::to_string(p) + " is not prime");
  const Real lp = log_of(p, prec);
  return lp * static_cast<long>(k - 1) / 2L + log(log(lp)) - log(lp) / 2L;
}

/// log(2 p^{(k-1)n/2} loglog p^n / (log p^n)^{1/2}), the prime-power form.
inline Real gt_prime_power_lower(const PrimePower& pp, int k, mpfr_prec_t prec = kDefaultPrecision) {
  if (pp.m < 1 || (pp.p == 2 && pp.m == 1)) fail(Errc::Domain, "gt_prime_power_lower needs p^n >= 3");
  const Real lq = log_of(pp.p, prec) * static_cast<long>(pp.m);
  return log(Real(2L, prec)) + lq * static_cast<long>(k - 1) / 2L + log(log(lq)) - log(lq) / 2L;
}

struct Thm1Lower {
  Real log_value;  // log((1/8) p^{exponent})
  Real exponent;   // (k-3)n/2 - 2k + 2 - epsilon
  bool nontrivial;  // p^{n/2} > p^5
};

inline Thm1Lower thm1_lower(const PrimePower& pp, int k, double epsilon = 0.01,
                            mpfr_prec_t prec = kDefaultPrecision) {
  if (k < 4) fail(Errc::UnsupportedWeight, "thm1_lower needs weight k >= 4");
  const Real eps = detail::epsilon_real(epsilon, prec);
  Real exponent = Real(static_cast<long>((k - 3) * static_cast<long>(pp.m)), prec) / 2L -
                  Real(static_cast<long>(2 * k - 2), prec) - eps;
  Real value = exponent * log_of(pp.p, prec) - log(Real(8L, prec));
  return {std::move(value), std::move(exponent), pp.m > 10};
}

/// log(n^{(k-3)/2 + logloglog n / loglog n}), defined for n > e^e.
inline Real thm2_lower(std::uint64_t n, int k, mpfr_prec_t prec = kDefaultPrecision) {
  if (n <= 15) fail(Errc::Domain, "thm2_lower needs n > e^e (n >= 16)");
  const Real ln = log_of(n, prec);
  const Real lln = log(ln);
  return ln * (Real(static_cast<long>(k - 3), prec) / 2L + log(lln) / lln);
}

/// Bounds applicable at one n, compared against the exact |lambda(n)|.
struct BoundReport {
  std::uint64_t n = 1;
  int weight = 12;
  std::optional<PrimePower> prime_power;  // set when n = p^m, m >= 1
  mpz_class exact_abs_coeff;
  std::optional<Interval> log_abs_coeff;  // absent when lambda(n) = 0
  std::map<BoundKind, Real> bounds;       // log scale
  bool thm1_nontrivial = false;

  bool vanishing() const { return exact_abs_coeff == 0; }

  /// Recomputed from the stored data on every call. Lower bounds do not
  /// apply to vanishing coefficients.
  std::optional<bool> satisfied(BoundKind kind) const {
    const auto it = bounds.find(kind);
    if (it == bounds.end()) return std::nullopt;
    switch (kind) {
      case BoundKind::Deligne:
        return within_deligne_bound(exact_abs_coeff, n, weight);
      case BoundKind::Hecke: {
        mpz_class cap;
        mpz_ui_pow_ui(cap.get_mpz_t(), prime_power->p, static_cast<unsigned long>(weight - 1) * prime_power->m);
        return exact_abs_coeff <= cap;
      }
      default:
        if (vanishing()) return std::nullopt;
        return log_abs_coeff->lo >= it->second;
    }
  }
};

inline BoundReport make_bound_report(std::uint64_t n, const mpz_class& lambda, int k,
                                     const BoundOptions& opts = {}) {
  const mpfr_prec_t prec = opts.precision;
  BoundReport r;
  r.n = n;
  r.weight = k;
  r.exact_abs_coeff = abs(lambda);
  if (!r.vanishing()) r.log_abs_coeff = log(Interval::from_mpz(r.exact_abs_coeff, prec));

  if (n > 1) {
    const Factorization fac = factorize(n);
    if (fac.size() == 1) r.prime_power = PrimePower(fac[0].p, fac[0].exponent);
  }
  r.bounds.emplace(BoundKind::Deligne, deligne_upper(n, k, prec));
  if (r.prime_power) {
    const PrimePower& pp = *r.prime_power;
    r.bounds.emplace(BoundKind::Hecke, hecke_upper(pp, k, prec));
    if (pp.m == 1 && pp.p >= 3)
      r.bounds.emplace(BoundKind::GtLower, gt_lower(pp.p, k, prec));
    else if (pp.m >= 2)
      r.bounds.emplace(BoundKind::GtLower, gt_prime_power_lower(pp, k, prec));
    if (k >= 4) {
      Thm1Lower t = thm1_lower(pp, k, opts.epsilon, prec);
      r.thm1_nontrivial = t.nontrivial;
      r.bounds.emplace(BoundKind::Thm1Lower, std::move(t.log_value));
    }
  }
  if (n >= 16) r.bounds.emplace(BoundKind::Thm2Lower, thm2_lower(n, k, prec));
  return r;
}

struct SandwichSummary {
  std::vector<BoundReport> reports;
  std::map<BoundKind, std::vector<std::uint64_t>> exceptions;
  std::map<BoundKind, std::size_t> checked;  // nonvanishing reports where the bound applied
  std::vector<std::uint64_t> vanishing;

  double fraction_satisfied(BoundKind kind) const {
    const auto c = checked.find(kind);
    if (c == checked.end() || c->second == 0) return 1.0;
    const auto e = exceptions.find(kind);
    const std::size_t bad = e == exceptions.end() ? 0 : e->second.size();
    return 1.0 - static_cast<double>(bad) / static_cast<double>(c->second);
  }
};

namespace detail {

// Runs body(i) for i in [0, count) in contiguous blocks; results are written
// by index so the outcome does not depend on the thread count.
template <class Body>
void for_blocks(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t * chunk; i < std::min(count, (t + 1) * chunk); ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline SandwichSummary summarize(std::vector<BoundReport> reports) {
  SandwichSummary s;
  for (const auto& r : reports) {
    if (r.vanishing()) s.vanishing.push_back(r.n);
    for (BoundKind kind : kAllBounds) {
      const auto ok = r.satisfied(kind);
      if (!ok) continue;
      ++s.checked[kind];
      if (!*ok) s.exceptions[kind].push_back(r.n);
    }
  }
  s.reports = std::move(reports);
  return s;
}

}  // namespace detail

/// Sandwich every n in `ns` (each within the table) between the bounds.
inline SandwichSummary verify_sandwich(const CoeffTable& table, std::span<const std::uint64_t> ns,
                                       const BoundOptions& opts = {}) {
  std::vector<BoundReport> reports(ns.size());
  detail::for_blocks(ns.size(), opts.threads, [&](std::size_t i) {
    reports[i] = make_bound_report(ns[i], table.at(ns[i]), table.form().weight, opts);
  });
  return detail::summarize(std::move(reports));
}

/// Same, computing each coefficient on demand by factored evaluation.
inline SandwichSummary verify_sandwich(const FormSpec& form, std::span<const std::uint64_t> ns,
                                       const BoundOptions& opts = {}, const EngineLimits& limits = {}) {
  std::vector<BoundReport> reports(ns.size());
  detail::for_blocks(ns.size(), opts.threads, [&](std::size_t i) {
    reports[i] = make_bound_report(ns[i], coeff_at(form, ns[i], limits), form.weight, opts);
  });
  return detail::summarize(std::move(reports));
}

inline std::vector<std::uint64_t> index_range(std::uint64_t first, std::uint64_t last) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = first; n <= last; ++n) out.push_back(n);
  return out;
}

}  // namespace modcoeff
