#pragma once

// Integer polynomials with exact rational helpers (gcd, square-free
// decomposition) used by the root isolation in diophantine.hpp.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "modcoeff/error.hpp"

namespace modcoeff {

/// Rational polynomial, coefficient of x^i at index i, no trailing zeros.
using QPoly = std::vector<mpq_class>;

namespace poly {

inline void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const QPoly& a) { return static_cast<int>(a.size()) - 1; }

inline QPoly derivative(const QPoly& a) {
  QPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
  trim(d);
  return d;
}

inline QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline QPoly monic(QPoly a) {
  if (a.empty()) return a;
  const mpq_class lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

/// Quotient and remainder of a / b, b nonzero.
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  if (b.empty()) fail(Errc::InvalidArgument, "polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1);
  for (std::size_t shift = q.size(); shift-- > 0;) {
    const mpq_class coef = a[shift + b.size() - 1] / b.back();
    q[shift] = coef;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= coef * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline mpq_class eval(const QPoly& a, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

/// Yun's algorithm: monic square-free factors; out[i] holds the roots of
/// multiplicity i + 1 (possibly the constant 1).
inline std::vector<QPoly> squarefree_decomposition(const QPoly& f) {
  std::vector<QPoly> out;
  const QPoly a = monic(f);
  if (degree(a) < 1) return out;
  const QPoly b = derivative(a);
  const QPoly c = gcd(a, b);
  QPoly w = divmod(a, c).first;
  QPoly y = divmod(b, c).first;
  QPoly z = sub(y, derivative(w));
  while (degree(w) > 0) {
    QPoly g = gcd(w, z);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = sub(y, derivative(w));
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace poly

enum class ContentPolicy { RequirePrimitive, AllowContent };

/// Integer polynomial a_0 + a_1 x + ... + a_d x^d with a_d != 0, d >= 1.
class MinimalPolynomial {
 public:
  explicit MinimalPolynomial(std::vector<mpz_class> coeffs, ContentPolicy policy = ContentPolicy::RequirePrimitive)
      : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) fail(Errc::Degree, "polynomial degree must be >= 1");
    if (coeffs_.back() == 0) fail(Errc::InvalidArgument, "leading coefficient must be nonzero");
    if (policy == ContentPolicy::RequirePrimitive && content() != 1)
      fail(Errc::InvalidArgument, "polynomial content is " + content().get_str() + ", expected 1");
  }

  /// Coefficients listed from the leading term down, as written by hand.
  static MinimalPolynomial from_descending(std::vector<mpz_class> coeffs,
                                           ContentPolicy policy = ContentPolicy::RequirePrimitive) {
    std::reverse(coeffs.begin(), coeffs.end());
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    return MinimalPolynomial(std::move(coeffs), policy);
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& leading() const { return coeffs_.back(); }

  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& c : coeffs_) g = gcd(g, c);
    return g;
  }

  QPoly to_rational() const { return QPoly(coeffs_.begin(), coeffs_.end()); }

  std::string str() const {
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!s.empty()) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      const mpz_class a = abs(c);
      if (a != 1 || i == 0) s += a.get_str();
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  std::vector<mpz_class> coeffs_;
};

}  // namespace modcoeff
