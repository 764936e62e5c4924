#pragma once

// Elementary multiplicative number theory on 64-bit integers: deterministic
// primality, factorization, sieves and the divisor-type functions d, omega,
// rad and v_p.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "modcoeff/error.hpp"

namespace modcoeff {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace detail

/// Miller-Rabin with the first thirteen prime bases. This witness set is
/// deterministic for every n < 3.3e24, which covers all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  static constexpr std::array<std::uint64_t, 13> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  if (n < 2) return false;
  for (std::uint64_t w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct PrimeFactor {
  std::uint64_t p;
  unsigned exponent;

  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

using Factorization = std::vector<PrimeFactor>;

namespace detail {

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n, or 0 once `budget` iterations are spent.
inline std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t& budget) {
  for (std::uint64_t c = 1; c < 64; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t steps = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += steps;
        if (budget <= steps) return 0;
        budget -= steps;
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out, std::uint64_t& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n, budget);
  if (d == 0) fail(Errc::Resource, "factorization budget exhausted for n=" + std::to_string(n));
  factor_into(d, out, budget);
  factor_into(n / d, out, budget);
}

}  // namespace detail

/// Prime factorization of n >= 1, sorted by prime. Trial division removes
/// factors below 1000 before Pollard rho takes over.
inline Factorization factorize(std::uint64_t n, std::uint64_t budget = 50'000'000) {
  if (n == 0) fail(Errc::Domain, "cannot factor 0");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  detail::factor_into(n, primes, budget);
  std::sort(primes.begin(), primes.end());
  Factorization result;
  for (std::uint64_t p : primes) {
    if (!result.empty() && result.back().p == p)
      ++result.back().exponent;
    else
      result.push_back({p, 1});
  }
  return result;
}

inline std::uint64_t divisor_count(std::uint64_t n) {
  std::uint64_t d = 1;
  for (const auto& f : factorize(n)) d *= f.exponent + 1;
  return d;
}

inline unsigned omega(std::uint64_t n) { return static_cast<unsigned>(factorize(n).size()); }

inline std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (const auto& f : factorize(n)) r *= f.p;
  return r;
}

inline unsigned p_adic_val(std::uint64_t p, std::uint64_t n) {
  if (!is_prime(p)) fail(Errc::Domain, "p_adic_val: " + std::to_string(p) + " is not prime");
  if (n == 0) fail(Errc::Domain, "p_adic_val: n must be positive");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Sieve of Eratosthenes with a smallest-prime-factor table on [0, limit].
/// Immutable after construction.
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        primes_.push_back(i);
        spf_[i] = static_cast<std::uint32_t>(i);
      }
      for (std::uint64_t p : primes_) {
        if (p > spf_[i] || i * p > limit) break;
        spf_[i * p] = static_cast<std::uint32_t>(p);
      }
    }
  }

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
  std::uint64_t smallest_factor(std::uint64_t n) const { return spf_[n]; }

  Factorization factorize(std::uint64_t n) const {
    if (n == 0 || n > limit_) fail(Errc::Range, "sieve factorization out of range: " + std::to_string(n));
    Factorization out;
    while (n > 1) {
      const std::uint64_t p = spf_[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.push_back({p, e});
    }
    return out;
  }

  /// Number of primes <= x (x within the sieve).
  std::uint64_t pi(std::uint64_t x) const {
    return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint64_t> primes_;
};

}  // namespace modcoeff
