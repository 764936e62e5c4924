#pragma once

// Heights, explicit Liouville bounds, continued-fraction convergents and the
// unimodular gap |beta - 1| for beta = (alpha_p / conj(alpha_p))^{m+1}.
//
// Root isolation: Aberth iteration at working precision, then Weierstrass
// inclusion disks D(z_j, d |W_j|) with W_j = g(z_j) / prod_{l != j}(z_j - z_l).
// When the disks are pairwise disjoint each holds exactly one root. Real
// roots are then tracked by exact rational bisection, so every comparison
// against a rational is decided on exact integers.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modcoeff/coeff_engine.hpp"
#include "modcoeff/error.hpp"
#include "modcoeff/polynomial.hpp"
#include "modcoeff/real.hpp"

namespace modcoeff {

/// p/q in lowest terms with q > 0.
class RationalApprox {
 public:
  RationalApprox(mpz_class num = 0, mpz_class den = 1) {
    if (den == 0) fail(Errc::InvalidArgument, "denominator must be nonzero");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit RationalApprox(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// "a/b" or "a".
  static RationalApprox parse(std::string_view text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) return RationalApprox(mpz_class(std::string(text)));
      return RationalApprox(mpz_class(std::string(text.substr(0, slash))),
                            mpz_class(std::string(text.substr(slash + 1))));
    } catch (const std::invalid_argument&) {
      fail(Errc::InvalidArgument, "not a rational: " + std::string(text));
    }
  }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& value() const { return q_; }
  std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

  friend bool operator==(const RationalApprox& a, const RationalApprox& b) { return a.q_ == b.q_; }

 private:
  mpq_class q_;
};

/// H(p/q) = max(|p|, q).
inline mpz_class rational_height(const RationalApprox& r) {
  const mpz_class a = abs(r.numerator());
  return a > r.denominator() ? a : r.denominator();
}

namespace detail {

struct Cx {
  Real re;
  Real im;
};

inline Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Cx operator/(const Cx& a, const Cx& b) {
  const Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

inline Real modulus(const Cx& z) {
  Real r(z.re.precision());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDU);
  return r;
}

inline Real pow2(long e, mpfr_prec_t prec) {
  Real r(1L, prec);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

struct Disk {
  Cx center;
  Real radius;
};

// Monic square-free g of degree d >= 1. Returns certified disks or nothing
// when the iteration did not separate the roots at this precision.
inline std::optional<std::vector<Disk>> certified_disks(const QPoly& g, mpfr_prec_t wp) {
  const int d = poly::degree(g);
  std::vector<Real> c;
  for (const auto& q : g) c.push_back(Real::from_mpq(q, wp));

  Real bound(1L, wp);  // Cauchy bound 1 + max |c_i|
  for (int i = 0; i < d; ++i)
    if (abs(c[i]) + 1L > bound) bound = abs(c[i]) + 1L;

  std::vector<Cx> z;
  const Real two_pi = Real::pi(wp) * 2L;
  for (int j = 0; j < d; ++j) {
    const Real angle = two_pi * static_cast<long>(j) / static_cast<long>(d) + Real(0.7, wp);
    z.push_back({bound * cos(angle), bound * sin(angle)});
  }

  auto horner = [&](const Cx& x, Cx& value, Cx& deriv) {
    value = {c[d], Real(wp)};
    deriv = {Real(wp), Real(wp)};
    for (int i = d - 1; i >= 0; --i) {
      deriv = deriv * x + value;
      value = value * x + Cx{c[i], Real(wp)};
    }
  };

  const Real tol = pow2(-static_cast<long>(wp) + 8, wp);
  bool converged = false;
  for (int iter = 0; iter < 1000 && !converged; ++iter) {
    converged = true;
    for (int j = 0; j < d; ++j) {
      Cx value, deriv;
      horner(z[j], value, deriv);
      if (value.re.is_zero() && value.im.is_zero()) continue;
      if (deriv.re.is_zero() && deriv.im.is_zero()) {
        z[j].re += tol;
        converged = false;
        continue;
      }
      const Cx ratio = value / deriv;
      Cx sum{Real(wp), Real(wp)};
      for (int l = 0; l < d; ++l)
        if (l != j) sum = sum + Cx{Real(1L, wp), Real(wp)} / (z[j] - z[l]);
      const Cx step = ratio / (Cx{Real(1L, wp), Real(wp)} - ratio * sum);
      z[j] = z[j] - step;
      Real scale = modulus(z[j]);
      if (scale < Real(1L, wp)) scale = Real(1L, wp);
      if (modulus(step) > tol * scale) converged = false;
    }
  }
  if (!converged) return std::nullopt;

  const Real unit = pow2(-static_cast<long>(wp), wp);
  const Real inflate = Real(1L, wp) + pow2(-20, wp);
  std::vector<Disk> disks;
  for (int j = 0; j < d; ++j) {
    Cx prod{Real(1L, wp), Real(wp)};
    for (int l = 0; l < d; ++l)
      if (l != j) prod = prod * (z[j] - z[l]);
    const Real prod_abs = modulus(prod);
    if (prod_abs.is_zero()) return std::nullopt;
    Cx value, deriv;
    horner(z[j], value, deriv);
    // Horner rounding: |error| <= 4(d+1) u sum |c_i| |z|^i.
    const Real zabs = modulus(z[j]);
    Real absolute_sum(wp);
    for (int i = d; i >= 0; --i) absolute_sum = absolute_sum * zabs + abs(c[i]);
    const Real err = unit * static_cast<long>(4 * (d + 1)) * absolute_sum / prod_abs;
    const Real w = modulus(value) / prod_abs;
    Real radius = (w + err) * static_cast<long>(d) * inflate + unit * (zabs + 1L);
    disks.push_back({z[j], std::move(radius)});
  }
  for (int j = 0; j < d; ++j)
    for (int l = j + 1; l < d; ++l)
      if (!(modulus(disks[j].center - disks[l].center) > (disks[j].radius + disks[l].radius) * inflate))
        return std::nullopt;
  return disks;
}

struct IsolatedFactor {
  QPoly factor;  // monic, square-free
  unsigned multiplicity;
  std::vector<Disk> disks;
  mpfr_prec_t working_precision;
};

enum class RootKind { Real, NonReal, Unknown };

inline RootKind classify(const std::vector<Disk>& disks, std::size_t j) {
  const Disk& dj = disks[j];
  if (abs(dj.center.im) > dj.radius) return RootKind::NonReal;
  // The disk centred on the real axis through Re z_j is closed under
  // conjugation; if it still holds a single root, that root is real.
  const Real widened = dj.radius + abs(dj.center.im);
  const Cx axis{dj.center.re, Real(dj.center.re.precision())};
  for (std::size_t l = 0; l < disks.size(); ++l) {
    if (l == j) continue;
    if (!(modulus(disks[l].center - axis) > disks[l].radius + widened)) return RootKind::Unknown;
  }
  return RootKind::Real;
}

inline IsolatedFactor isolate_factor(QPoly g, unsigned multiplicity, mpfr_prec_t prec, bool need_real_split) {
  for (mpfr_prec_t wp = prec + 32; wp <= 16 * prec + 512; wp *= 2) {
    auto disks = certified_disks(g, wp);
    if (!disks) continue;
    if (need_real_split) {
      bool ok = true;
      for (std::size_t j = 0; j < disks->size() && ok; ++j) ok = classify(*disks, j) != RootKind::Unknown;
      if (!ok) continue;
    }
    return {std::move(g), multiplicity, std::move(*disks), wp};
  }
  fail(Errc::Precision, "root isolation failed; retry with a higher precision");
}

inline std::vector<IsolatedFactor> isolate_all(const MinimalPolynomial& f, mpfr_prec_t prec, bool need_real_split) {
  std::vector<IsolatedFactor> out;
  const auto parts = poly::squarefree_decomposition(f.to_rational());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (poly::degree(parts[i]) < 1) continue;
    out.push_back(isolate_factor(parts[i], static_cast<unsigned>(i + 1), prec, need_real_split));
  }
  return out;
}

}  // namespace detail

/// A root enclosure: centre and radius of a disk holding exactly one root.
struct RootDisk {
  Real re;
  Real im;
  Real radius;
  unsigned multiplicity;
};

inline std::vector<RootDisk> isolate_roots(const MinimalPolynomial& f, mpfr_prec_t prec = kDefaultPrecision) {
  std::vector<RootDisk> out;
  for (auto& part : detail::isolate_all(f, prec, false))
    for (auto& disk : part.disks) out.push_back({disk.center.re, disk.center.im, disk.radius, part.multiplicity});
  return out;
}

/// H(alpha) = |a_d| prod max(1, |alpha_i|) over all d roots with multiplicity,
/// returned as a certified enclosure.
inline Interval mahler_height(const MinimalPolynomial& f, mpfr_prec_t prec = kDefaultPrecision) {
  const auto parts = detail::isolate_all(f, prec, false);
  mpfr_prec_t wp = prec;
  for (const auto& part : parts) wp = std::max(wp, part.working_precision);
  Interval acc = Interval::from_mpz(abs(f.leading()), wp);
  const Real one(1L, wp);
  for (const auto& part : parts) {
    for (const auto& disk : part.disks) {
      Interval factor{Real(wp), Real(wp)};
      const Real m = detail::modulus(disk.center);  // rounded up
      mpfr_sub(factor.lo.get(), m.get(), disk.radius.get(), MPFR_RNDD);
      mpfr_nextbelow(factor.lo.get());
      mpfr_add(factor.hi.get(), m.get(), disk.radius.get(), MPFR_RNDU);
      if (factor.lo < one) factor.lo = one;
      if (factor.hi < one) factor.hi = one;
      for (unsigned e = 0; e < part.multiplicity; ++e) acc = mul_nonneg(acc, factor);
    }
  }
  Interval out{Real(prec), Real(prec)};
  mpfr_set(out.lo.get(), acc.lo.get(), MPFR_RNDD);
  mpfr_set(out.hi.get(), acc.hi.get(), MPFR_RNDU);
  return out;
}

/// A real root of an integer polynomial tracked by an isolating interval
/// [lower, upper] with rational endpoints. Refinement is exact bisection.
class RealRoot {
 public:
  RealRoot(const QPoly& squarefree_factor, mpq_class lo, mpq_class hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    mpz_class lcm_den = 1;
    for (const auto& c : squarefree_factor) lcm_den = lcm(lcm_den, c.get_den());
    for (const auto& c : squarefree_factor) g_.push_back(mpz_class(c * lcm_den));
    if (lo_ == hi_) return;
    sign_lo_ = sign_at(lo_);
    const int sign_hi = sign_at(hi_);
    if (sign_lo_ == 0) {
      hi_ = lo_;
    } else if (sign_hi == 0) {
      lo_ = hi_;
    } else if (sign_lo_ == sign_hi) {
      fail(Errc::InvariantViolation, "isolating interval without a sign change");
    }
    snap_rational();
  }

  const mpq_class& lower() const { return lo_; }
  const mpq_class& upper() const { return hi_; }
  bool exact() const { return lo_ == hi_; }
  mpq_class width() const { return hi_ - lo_; }

  void bisect() {
    if (exact()) return;
    mpq_class mid = (lo_ + hi_) / 2;
    const int s = sign_at(mid);
    if (s == 0) {
      lo_ = mid;
      hi_ = std::move(mid);
    } else if (s == sign_lo_) {
      lo_ = std::move(mid);
    } else {
      hi_ = std::move(mid);
    }
  }

  /// Shrink the interval to width <= 2^-bits.
  void refine_to(long bits) {
    mpq_class target(1);
    mpz_class den = 1;
    den <<= static_cast<unsigned long>(std::max(0L, bits));
    target = mpq_class(1, den);
    while (!exact() && width() > target) bisect();
  }

  Interval enclosure(mpfr_prec_t prec) const { return {Real::from_mpq(lo_, prec, MPFR_RNDD), Real::from_mpq(hi_, prec, MPFR_RNDU)}; }

 private:
  // A rational root has denominator dividing the leading coefficient a, so
  // once the width is below 1/(2|a|) the only candidate is the multiple of
  // 1/|a| inside the interval. Without this, bisection never lands on it.
  void snap_rational() {
    if (exact()) return;
    const mpz_class a = abs(g_.back());
    const mpq_class step(1, a);
    while (!exact() && width() * 2 >= step) bisect();
    if (exact()) return;
    mpz_class k;
    const mpq_class scaled = lo_ * a;
    mpz_cdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    mpq_class c(k, a);
    c.canonicalize();
    if (c <= hi_ && sign_at(c) == 0) {
      lo_ = c;
      hi_ = c;
    }
  }

  int sign_at(const mpq_class& x) const {
    // sign of sum g_i num^i den^{d-i}; den > 0
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    mpz_class acc = 0, den_pow = 1;
    for (std::size_t i = g_.size(); i-- > 0;) {
      acc = acc * num + g_[i] * den_pow;
      den_pow *= den;
    }
    return sgn(acc);
  }

  std::vector<mpz_class> g_;
  mpq_class lo_, hi_;
  int sign_lo_ = 0;
};

/// Real roots of f in increasing order (each listed once).
inline std::vector<RealRoot> real_roots(const MinimalPolynomial& f, mpfr_prec_t prec = kDefaultPrecision) {
  std::vector<RealRoot> roots;
  for (auto& part : detail::isolate_all(f, prec, true)) {
    if (poly::degree(part.factor) == 1) {
      const mpq_class r = -part.factor[0] / part.factor[1];
      roots.emplace_back(part.factor, r, r);
      continue;
    }
    for (std::size_t j = 0; j < part.disks.size(); ++j) {
      if (detail::classify(part.disks, j) != detail::RootKind::Real) continue;
      const detail::Disk& disk = part.disks[j];
      const Real widened = disk.radius + abs(disk.center.im);
      Real lo(part.working_precision), hi(part.working_precision);
      mpfr_sub(lo.get(), disk.center.re.get(), widened.get(), MPFR_RNDD);
      mpfr_add(hi.get(), disk.center.re.get(), widened.get(), MPFR_RNDU);
      roots.emplace_back(part.factor, lo.to_mpq(), hi.to_mpq());
    }
  }
  auto by_lower = [](const RealRoot& a, const RealRoot& b) { return a.lower() < b.lower(); };
  std::sort(roots.begin(), roots.end(), by_lower);
  // Roots of different square-free factors are distinct; separate overlaps.
  for (bool overlap = true; overlap;) {
    overlap = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      if (roots[i].upper() >= roots[i + 1].lower()) {
        overlap = true;
        roots[i].bisect();
        roots[i + 1].bisect();
      }
    }
    std::sort(roots.begin(), roots.end(), by_lower);
  }
  return roots;
}

/// c(alpha) = 2^{1-d} / H(alpha), returned as a certified lower endpoint.
inline Real liouville_constant(const MinimalPolynomial& f, mpfr_prec_t prec = kDefaultPrecision) {
  if (f.degree() < 2) fail(Errc::Degree, "liouville_constant needs degree >= 2 (rational alpha excluded)");
  const Interval h = mahler_height(f, prec);
  Real c(prec);
  mpfr_set_ui_2exp(c.get(), 1, 1 - f.degree(), MPFR_RNDN);
  mpfr_div(c.get(), c.get(), h.hi.get(), MPFR_RNDD);
  return c;
}

/// F(p, q) = q^d f(p/q) = sum a_i p^i q^{d-i}.
inline mpz_class integer_form(const MinimalPolynomial& f, const RationalApprox& r) {
  const mpz_class p = r.numerator(), q = r.denominator();
  mpz_class acc = 0, q_pow = 1;
  const auto& a = f.coeffs();
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = acc * p + a[i] * q_pow;
    q_pow *= q;
  }
  if (acc == 0) fail(Errc::ZeroForm, r.str() + " is a root of " + f.str());
  return acc;
}

/// Everything liouville_check needs about one root, reusable across many
/// rational approximations.
struct LiouvilleTarget {
  MinimalPolynomial poly;
  RealRoot root;
  Interval mahler;
};

inline LiouvilleTarget liouville_target(const MinimalPolynomial& f, std::size_t root_index,
                                        mpfr_prec_t prec = kDefaultPrecision) {
  if (f.degree() < 2) fail(Errc::Degree, "Liouville bound needs degree >= 2");
  auto roots = real_roots(f, prec);
  if (root_index >= roots.size())
    fail(Errc::Range, "root index " + std::to_string(root_index) + " but f has " + std::to_string(roots.size()) +
                          " real roots");
  return {f, std::move(roots[root_index]), mahler_height(f, prec)};
}

struct LiouvilleReport {
  Interval lhs;          // |alpha - p/q|
  Real rhs;              // c(alpha) / H(p/q)^d, rounded up
  Real constant;         // 2^{1-d} / H(alpha), rounded down
  mpz_class height;      // H(p/q)
  mpz_class form_value;  // F(p, q)
  bool satisfied = false;
};

/// Certified comparison |alpha - r| >= c(alpha) / H(r)^d.
inline LiouvilleReport liouville_check(LiouvilleTarget& target, const RationalApprox& r,
                                       mpfr_prec_t prec = kDefaultPrecision) {
  const int d = target.poly.degree();
  LiouvilleReport rep;
  rep.form_value = integer_form(target.poly, r);
  rep.height = rational_height(r);
  mpz_class hd;
  mpz_pow_ui(hd.get_mpz_t(), rep.height.get_mpz_t(), static_cast<unsigned long>(d));

  Real c_hi(prec), hd_lo(prec), hd_hi(prec);
  rep.constant = Real(prec);
  mpfr_set_ui_2exp(rep.constant.get(), 1, 1 - d, MPFR_RNDN);
  mpfr_set_ui_2exp(c_hi.get(), 1, 1 - d, MPFR_RNDN);
  mpfr_div(rep.constant.get(), rep.constant.get(), target.mahler.hi.get(), MPFR_RNDD);
  mpfr_div(c_hi.get(), c_hi.get(), target.mahler.lo.get(), MPFR_RNDU);
  mpfr_set_z(hd_lo.get(), hd.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hd_hi.get(), hd.get_mpz_t(), MPFR_RNDU);
  rep.rhs = Real(prec);
  Real rhs_lo(prec);
  mpfr_div(rep.rhs.get(), c_hi.get(), hd_lo.get(), MPFR_RNDU);
  mpfr_div(rhs_lo.get(), rep.constant.get(), hd_hi.get(), MPFR_RNDD);

  const mpq_class& x = r.value();
  RealRoot& root = target.root;
  const long max_steps = 64L * prec + 4096;
  for (long step = 0; step <= max_steps; ++step) {
    if (x < root.lower() || x > root.upper()) {
      const mpq_class a = abs(x - root.lower()), b = abs(x - root.upper());
      rep.lhs = {Real::from_mpq(a < b ? a : b, prec, MPFR_RNDD), Real::from_mpq(a < b ? b : a, prec, MPFR_RNDU)};
      if (rep.lhs.lo >= rep.rhs) {
        rep.satisfied = true;
        return rep;
      }
      if (rep.lhs.hi < rhs_lo) {
        rep.satisfied = false;
        return rep;
      }
    }
    if (root.exact()) break;
    root.bisect();
  }
  fail(Errc::Precision, "could not separate |alpha - r| from the Liouville bound; raise precision");
}

inline LiouvilleReport liouville_check(const MinimalPolynomial& f, std::size_t root_index, const RationalApprox& r,
                                       mpfr_prec_t prec = kDefaultPrecision) {
  LiouvilleTarget target = liouville_target(f, root_index, prec);
  return liouville_check(target, r, prec);
}

struct ConvergentSeq {
  std::vector<mpz_class> partial_quotients;
  std::vector<RationalApprox> convergents;
  bool terminated = false;  // the expansion ended: the input was rational

  std::size_t size() const { return convergents.size(); }
};

/// (a + b sqrt(d)) / c with d > 0 not a square and b, c nonzero.
struct QuadraticSurd {
  mpz_class a;
  mpz_class b;
  mpz_class d;
  mpz_class c;
};

namespace detail {

class ConvergentBuilder {
 public:
  void push(const mpz_class& a) {
    mpz_class p = a * p1_ + p2_;
    mpz_class q = a * q1_ + q2_;
    seq.partial_quotients.push_back(a);
    seq.convergents.emplace_back(p, q);
    p2_ = std::move(p1_);
    p1_ = std::move(p);
    q2_ = std::move(q1_);
    q1_ = std::move(q);
  }
  ConvergentSeq seq;

 private:
  mpz_class p1_ = 1, p2_ = 0, q1_ = 0, q2_ = 1;
};

inline mpz_class floor_q(const mpq_class& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

// Convergents common to every number in [lo, hi].
inline ConvergentSeq cf_of_interval(mpq_class lo, mpq_class hi, std::size_t count) {
  ConvergentBuilder b;
  const bool exact = lo == hi;
  while (b.seq.size() < count) {
    const mpz_class a = floor_q(lo);
    if (floor_q(hi) != a) break;
    b.push(a);
    mpq_class flo = lo - a, fhi = hi - a;
    if (flo == 0) {
      b.seq.terminated = exact;
      break;
    }
    lo = 1 / fhi;
    hi = 1 / flo;
  }
  return std::move(b.seq);
}

}  // namespace detail

inline ConvergentSeq convergents_of(const RationalApprox& x, std::size_t count) {
  if (count == 0) fail(Errc::InvalidArgument, "count must be >= 1");
  return detail::cf_of_interval(x.value(), x.value(), count);
}

inline ConvergentSeq convergents_of(const QuadraticSurd& s, std::size_t count) {
  if (count == 0) fail(Errc::InvalidArgument, "count must be >= 1");
  if (s.c == 0 || s.b == 0 || s.d <= 0 || mpz_perfect_square_p(s.d.get_mpz_t()))
    fail(Errc::InvalidArgument, "quadratic surd needs b, c != 0 and d > 0 non-square");
  // Normalize to (P + sqrt(E)) / Q with Q | E - P^2.
  mpz_class E = s.b * s.b * s.d;
  mpz_class P = s.b > 0 ? s.a : mpz_class(-s.a);
  mpz_class Q = s.b > 0 ? s.c : mpz_class(-s.c);
  if (!mpz_divisible_p(mpz_class(E - P * P).get_mpz_t(), Q.get_mpz_t())) {
    const mpz_class aq = abs(Q);
    P *= aq;
    E *= Q * Q;
    Q *= aq;
  }
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), E.get_mpz_t());
  // t <= (P + sqrt(E)) / Q, decided exactly.
  auto leq = [&](const mpz_class& t) {
    const mpz_class u = t * Q - P;
    if (Q > 0) return u <= 0 || u * u <= E;
    return u >= 0 && u * u >= E;
  };
  detail::ConvergentBuilder b;
  while (b.seq.size() < count) {
    mpz_class t;
    mpz_fdiv_q(t.get_mpz_t(), mpz_class(P + root).get_mpz_t(), Q.get_mpz_t());
    while (!leq(t)) --t;
    while (leq(t + 1)) ++t;
    b.push(t);
    P = t * Q - P;
    Q = (E - P * P) / Q;
  }
  return std::move(b.seq);
}

/// A finite-precision real stands for [x - ulp, x + ulp].
inline ConvergentSeq convergents_of(const Real& x, std::size_t count) {
  if (count == 0) fail(Errc::InvalidArgument, "count must be >= 1");
  Real lo(x), hi(x);
  mpfr_nextbelow(lo.get());
  mpfr_nextabove(hi.get());
  ConvergentSeq seq = detail::cf_of_interval(lo.to_mpq(), hi.to_mpq(), count);
  if (seq.size() < count) fail(Errc::Precision, "precision exhausted after " + std::to_string(seq.size()) + " terms");
  return seq;
}

/// Convergents of a real algebraic number, refining its interval as needed.
inline ConvergentSeq convergents_of(RealRoot root, std::size_t count) {
  if (count == 0) fail(Errc::InvalidArgument, "count must be >= 1");
  for (long bits = 64; bits <= (1L << 20); bits *= 2) {
    root.refine_to(bits);
    ConvergentSeq seq = detail::cf_of_interval(root.lower(), root.upper(), count);
    if (seq.size() == count || seq.terminated) return seq;
  }
  fail(Errc::Precision, "precision exhausted while expanding algebraic root");
}

/// The threshold 1/(8 p^{n+2k-2}) as an exact denominator and in log scale.
struct GapThreshold {
  mpz_class denominator;
  Real log_value;
};

inline GapThreshold corollary_gap(const PrimePower& pp, int k, mpfr_prec_t prec = kDefaultPrecision) {
  if (k < 4) fail(Errc::UnsupportedWeight, "corollary_gap needs k >= 4");
  if (pp.m < 1) fail(Errc::Domain, "corollary_gap needs n >= 1");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), pp.p, pp.m + 2 * static_cast<unsigned long>(k) - 2);
  den *= 8;
  return {den, -log_of(den, prec)};
}

struct GapReport {
  std::uint64_t p = 2;
  unsigned m = 1;
  int weight = 12;
  Real gap;         // |beta - 1| = 2 |sin((m+1) theta)|
  Real threshold;   // 1 / (8 p^{m+2k-2})
  Real log_margin;  // log(gap / threshold); -inf when the gap vanishes
  bool exact_zero = false;
  bool satisfied = false;
};

inline GapReport unimodular_gap_check(const FrobeniusAngle& angle, unsigned m) {
  if (angle.degenerate()) fail(Errc::DegenerateAngle, "theta in {0, pi}");
  const mpfr_prec_t prec = angle.precision_bits;
  const int k = angle.weight;
  GapReport rep;
  rep.p = angle.p;
  rep.m = m;
  rep.weight = k;

  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), angle.p, m + 2 * static_cast<unsigned long>(k) - 2);
  den *= 8;
  rep.threshold = Real(prec);
  mpfr_ui_div(rep.threshold.get(), 1, Real::from_mpz(den, prec + 16).get(), MPFR_RNDN);

  rep.gap = Real(prec);
  rep.log_margin = Real(prec);
  if (angle.pi_multiple && (static_cast<long>(m + 1) * angle.pi_multiple->first) % angle.pi_multiple->second == 0) {
    rep.exact_zero = true;
    mpfr_set_inf(rep.log_margin.get(), -1);
    return rep;
  }
  const mpfr_prec_t wp = prec + 32;
  Real theta(wp);
  mpfr_set(theta.get(), angle.theta.get(), MPFR_RNDN);
  const Real gap = abs(sin(theta * static_cast<long>(m + 1))) * 2L;
  mpfr_set(rep.gap.get(), gap.get(), MPFR_RNDN);
  const Real margin = log(gap) + log_of(den, wp);
  mpfr_set(rep.log_margin.get(), margin.get(), MPFR_RNDN);
  rep.satisfied = rep.gap > rep.threshold;
  return rep;
}

/// |e^{2i(m+1) theta} - 1| by direct complex evaluation; an independent path
/// to the gap in unimodular_gap_check.
inline Real gap_via_complex(const FrobeniusAngle& angle, unsigned m) {
  const mpfr_prec_t wp = angle.precision_bits + 32;
  Real theta(wp);
  mpfr_set(theta.get(), angle.theta.get(), MPFR_RNDN);
  const Real phi = theta * static_cast<long>(2 * (m + 1));
  const detail::Cx z{cos(phi) - 1L, sin(phi)};
  Real out(angle.precision_bits);
  mpfr_hypot(out.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return out;
}

}  // namespace modcoeff
