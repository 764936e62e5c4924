#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "modcoeff/coeff_engine.hpp"

using namespace modcoeff;

namespace {

// Oracle: multiply out prod_{n < N} (1 - q^n)^24 one binomial at a time,
// then shift by q. Quadratic, independent of the theta-series route.
std::vector<mpz_class> naive_tau(std::size_t N) {
  std::vector<mpz_class> s(N, 0);
  s[0] = 1;
  for (std::size_t n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = N; i-- > n;) s[i] -= s[i - n];
  std::vector<mpz_class> tau(N + 1, 0);
  for (std::size_t i = 0; i < N; ++i) tau[i + 1] = s[i];
  return tau;
}

// Oracle: p + 1 - (#affine solutions + 1), counting every (x, y).
long brute_trace(long a, long b, long p) {
  long count = 1;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y) {
      const long lhs = (y * y) % p;
      long rhs = ((x * x % p) * x + a * x + b) % p;
      if (rhs < 0) rhs += p;
      count += lhs == rhs;
    }
  return p + 1 - count;
}

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Io;  // sentinel: nothing thrown
}

}  // namespace

TEST(TauSeries, FirstValues) {
  const CoeffTable t = tau_series(6);
  const long expected[] = {0, 1, -24, 252, -1472, 4830, -6048};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(t[n], expected[n]) << n;
  EXPECT_EQ(tau_series(1)[1], 1);
}

TEST(TauSeries, MatchesNaiveConvolutionTo200) {
  const CoeffTable t = tau_series(200);
  const auto oracle = naive_tau(200);
  for (std::size_t n = 1; n <= 200; ++n) ASSERT_EQ(t[n], oracle[n]) << n;
}

TEST(TauSeries, Errors) {
  EXPECT_EQ(code_of([] { tau_series(0); }), Errc::EmptyRange);
  EngineLimits small;
  small.table_cap = 10;
  EXPECT_EQ(code_of([&] { tau_series(11, small); }), Errc::Resource);
  EXPECT_EQ(code_of([] { tau_series(6).at(7); }), Errc::Range);
}

TEST(TauSeries, Multiplicativity) {
  const CoeffTable t = tau_series(2000);
  for (std::uint64_t m = 2; m <= 2000; ++m)
    for (std::uint64_t n = m + 1; m * n <= 2000; ++n)
      if (std::gcd(m, n) == 1) ASSERT_EQ(t[m * n], t[m] * t[n]) << m << "*" << n;
}

TEST(TauSeries, DeligneHoldsExactly) {
  const CoeffTable t = tau_series(3000);
  for (std::uint64_t n = 1; n <= 3000; ++n) ASSERT_TRUE(within_deligne_bound(t[n], n, 12)) << n;
}

TEST(HeckePrimePower, SmallCases) {
  EXPECT_EQ(hecke_prime_power(-24, PrimePower(2, 0), 12), 1);
  EXPECT_EQ(hecke_prime_power(-24, PrimePower(2, 1), 12), -24);
  EXPECT_EQ(hecke_prime_power(-24, PrimePower(2, 2), 12), -1472);
  EXPECT_EQ(hecke_prime_power(-24, PrimePower(2, 2), 12), 24 * 24 - 2048);
}

TEST(HeckePrimePower, AgreesWithSeriesAndSatisfiesRecurrence) {
  const CoeffTable t = tau_series(5000);
  for (std::uint64_t p = 2; p <= 70; ++p) {
    if (!is_prime(p)) continue;
    const mpz_class scale = detail::pow_u64(p, 11);
    std::uint64_t q = 1;
    for (unsigned m = 0; q <= 5000; ++m, q *= p) ASSERT_EQ(hecke_prime_power(t[p], PrimePower(p, m), 12), t[q]);
    for (unsigned m = 2; m <= 12; ++m) {
      const mpz_class a = hecke_prime_power(t[p], PrimePower(p, m), 12);
      const mpz_class b = hecke_prime_power(t[p], PrimePower(p, m - 1), 12);
      const mpz_class c = hecke_prime_power(t[p], PrimePower(p, m - 2), 12);
      ASSERT_EQ(a, t[p] * b - scale * c);
    }
  }
}

TEST(CoeffAt, DeltaValues) {
  EXPECT_EQ(coeff_at(FormSpec::delta(), 1), 1);
  EXPECT_EQ(coeff_at(FormSpec::delta(), 6), -6048);
  EXPECT_EQ(coeff_at(FormSpec::delta(), 1000000), mpz_class("262191418612588689102548992000000"));
  const CoeffTable t = tau_series(600);
  for (std::uint64_t n = 1; n <= 600; ++n) ASSERT_EQ(coeff_at(FormSpec::delta(), n), t[n]) << n;
}

TEST(CoeffAt, ZeroIndexRejected) { EXPECT_EQ(code_of([] { coeff_at(FormSpec::delta(), 0); }), Errc::EmptyRange); }

TEST(EcTrace, Examples) {
  EXPECT_EQ(ec_trace(0, 1, 5), 0);
  EXPECT_EQ(ec_trace(1, 0, 3), brute_trace(1, 0, 3));
  EngineLimits small;
  small.point_count_cap = 100;
  EXPECT_EQ(code_of([&] { ec_trace(0, 1, 101, small); }), Errc::Resource);
  EXPECT_EQ(code_of([] { ec_trace(0, 1, 3); }), Errc::BadReduction);
  EXPECT_EQ(code_of([] { ec_trace(0, 1, 9); }), Errc::Domain);
}

TEST(EcTrace, MatchesBruteForceCounts) {
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b)
      for (long p = 3; p <= 100; p += 2) {
        if (!is_prime(static_cast<std::uint64_t>(p))) continue;
        const long disc = 16 * (4 * a * a * a + 27 * b * b);
        if (disc % p == 0) {
          EXPECT_EQ(code_of([&] { ec_trace(a, b, p); }), Errc::BadReduction);
          continue;
        }
        const long ap = ec_trace(a, b, p);
        ASSERT_EQ(ap, brute_trace(a, b, p)) << a << "," << b << "," << p;
        ASSERT_LE(static_cast<double>(ap * ap), 4.0 * p);
      }
}

TEST(EllipticCurveForm, TableIsMultiplicativeAndMatchesCoeffAt) {
  const FormSpec f = FormSpec::elliptic_curve(0, 1);
  EXPECT_EQ(f.weight, 2);
  const CoeffTable t = coeff_table(f, 400);
  EXPECT_EQ(t[5], 0);
  EXPECT_EQ(t[7], -4);
  EXPECT_EQ(t[13], 2);
  for (std::uint64_t n = 1; n <= 400; ++n) ASSERT_EQ(coeff_at(f, n), t[n]) << n;
  for (std::uint64_t m = 2; m <= 400; ++m)
    for (std::uint64_t n = m + 1; m * n <= 400; ++n)
      if (std::gcd(m, n) == 1) ASSERT_EQ(t[m * n], t[m] * t[n]);
  for (std::uint64_t n = 1; n <= 400; ++n) ASSERT_TRUE(within_deligne_bound(t[n], n, 2)) << n;
}

TEST(FormSpecTest, Invariants) {
  EXPECT_EQ(code_of([] { FormSpec::elliptic_curve(0, 0); }), Errc::InvalidArgument);
  FormSpec d = FormSpec::delta();
  d.weight = 10;
  EXPECT_EQ(code_of([&] { d.validate(); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { PrimePower(4, 1); }), Errc::Domain);
  EXPECT_EQ(FormSpec::elliptic_curve(1, 1).discriminant(), -16 * 31);
}

TEST(FrobeniusAngleTest, Values) {
  const FrobeniusAngle zero = frobenius_angle(0, 3, 12);
  EXPECT_TRUE(zero.pi_multiple.has_value());
  EXPECT_LT(std::fabs(zero.theta.to_double() - M_PI / 2), 1e-15);

  // arccos(-24 / 2^{6.5}) from a 60-digit arccos evaluation
  const FrobeniusAngle a = frobenius_angle(-24, 2, 12);
  const Real oracle = Real::from_string("1.83917141540925226491075095295007807667927839131171692375179", 200);
  EXPECT_LT(abs(a.theta - oracle).to_double(), 1e-35);
  // cos(theta) = lambda / (2 p^{(k-1)/2})
  EXPECT_LT(std::fabs(cos(a.theta).to_double() + 24.0 / std::pow(2.0, 6.5)), 1e-15);

  const FrobeniusAngle edge = frobenius_angle(4, 2, 3);  // 2 * 2^{1}: theta = 0
  EXPECT_TRUE(edge.degenerate());
  EXPECT_TRUE(edge.theta.is_zero());
  EXPECT_EQ(code_of([] { frobenius_angle(5, 2, 3); }), Errc::DeligneViolation);
}

TEST(BinetEval, SmallCases) {
  const FrobeniusAngle a = frobenius_angle(-24, 2, 12);
  EXPECT_LT(abs(binet_eval(a, 0) - Real(1L, 128)).to_double(), 1e-30);
  EXPECT_LT(abs(binet_eval(a, 1) - Real(-24L, 128)).to_double(), 1e-28);
  const Real h = Real::from_mpz(hecke_prime_power(-24, PrimePower(2, 5), 12), 128);
  EXPECT_LT((abs(binet_eval(a, 5) - h) / abs(h)).to_double(), 1e-20);
  EXPECT_EQ(code_of([] { binet_eval(frobenius_angle(4, 2, 3), 2); }), Errc::DegenerateAngle);
}

TEST(BinetEval, ZeroEigenvalueParity) {
  // lambda(p) = 0: lambda(p^m) = 0 for odd m and (-p^{k-1})^{m/2} for even m.
  const FrobeniusAngle a = frobenius_angle(0, 5, 12);
  for (unsigned m = 0; m <= 9; ++m) {
    const mpz_class h = hecke_prime_power(0, PrimePower(5, m), 12);
    const Real b = binet_eval(a, m);
    if (m % 2) {
      EXPECT_EQ(h, 0);
      EXPECT_TRUE(b.is_zero()) << m;
    } else {
      EXPECT_LT((abs(b - Real::from_mpz(h, 160)) / Real::from_mpz(abs(h), 160)).to_double(), 1e-30);
    }
  }
}

TEST(BinetEval, AgreesWithRecurrenceAcrossPrimes) {
  const CoeffTable t = tau_series(200);
  for (std::uint64_t p = 2; p <= 200; ++p) {
    if (!is_prime(p)) continue;
    for (mpfr_prec_t prec : {64, 128, 256}) {
      const FrobeniusAngle a = frobenius_angle(t[p], p, 12, prec);
      for (unsigned m = 0; m <= 15; ++m) {
        const mpz_class h = hecke_prime_power(t[p], PrimePower(p, m), 12);
        const Real hr = Real::from_mpz(h, prec + 32);
        Real denom = abs(hr);
        if (denom < Real(1L, prec)) denom = Real(1L, prec);
        const Real rel = abs(binet_eval(a, m) - hr) / denom;
        ASSERT_LT(mpfr_get_exp(rel.get()), -prec / 2 + 1) << p << " " << m << " " << prec;
      }
    }
  }
}
