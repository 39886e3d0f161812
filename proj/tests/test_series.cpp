#include <gtest/gtest.h>

#include <random>
#include <utility>

#include "invlog/series.hpp"
#include "oracles.hpp"

using namespace invlog;

namespace {

Series from(std::vector<cplx> c) { return Series(std::move(c)); }

void expect_coeffs(const Series& s, const std::vector<cplx>& want, double tol) {
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(std::abs(s[k] - want[k]), 0.0, tol) << "k=" << k;
}

Series random_series(std::mt19937_64& rng, std::size_t order, cplx c0) {
  auto c = oracle::random_disk_coeffs(rng, order);
  c[0] = c0;
  return from(c);
}

AnalyticSeries random_analytic(std::mt19937_64& rng, std::size_t order) {
  auto c = oracle::random_disk_coeffs(rng, order);
  c[0] = 0.0;
  c[1] = 1.0;
  return AnalyticSeries(from(c));
}

double sup_norm(const Series& s) {
  double m = 0;
  for (auto v : s.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(Series, TypesEnforceNormalization) {
  EXPECT_THROW(UnitSeries(Series{2.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(AnalyticSeries(Series{0.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(AnalyticSeries(Series{1e-300, 1.0}), std::invalid_argument);
  EXPECT_NO_THROW(AnalyticSeries(Series{0.0, 1.0, 5.0}));
  Series s(3);
  EXPECT_EQ(s.coeffs().size(), 4u);
  EXPECT_EQ(std::as_const(s)[10], cplx{});
  EXPECT_THROW(s[4] = 1.0, std::out_of_range);
}

TEST(Series, MultiplyExamples) {
  expect_coeffs(multiply(Series{1.0, 1.0}, Series{1.0, -1.0}, 2), {1.0, 0.0, -1.0}, 0);
  const Series sq{1.0, -2.0, 1.0};
  expect_coeffs(multiply(sq, sq, 4), {1.0, -4.0, 6.0, -4.0, 1.0}, 0);
  // z/k(z) = (1-z)^2 from the Koebe coefficients a_n = n.
  Series k(6);
  for (std::size_t n = 1; n <= 6; ++n) k[n] = double(n);
  const auto zk = reciprocal(over_z(AnalyticSeries(k)), 5);
  expect_coeffs(multiply(zk.series(), zk.series(), 4), {1.0, -4.0, 6.0, -4.0, 1.0}, 1e-14);
  EXPECT_EQ(multiply(sq, sq, 4).order(), 4u);
  EXPECT_EQ(multiply(sq, sq, 1).order(), 1u);
}

TEST(Series, ReciprocalExamples) {
  expect_coeffs(reciprocal(UnitSeries(Series{1.0, -1.0}), 6).series(), std::vector<cplx>(7, 1.0), 0);
  // Long division of 1 by 1 - z/2.
  const auto r = reciprocal(UnitSeries(Series{1.0, -0.5}), 10);
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_DOUBLE_EQ(r[n].real(), std::ldexp(1.0, -int(n)));
  expect_coeffs(reciprocal(UnitSeries::one(4), 4).series(), {1.0, 0.0, 0.0, 0.0, 0.0}, 0);
  EXPECT_THROW(UnitSeries(Series{0.5, 1.0}), std::invalid_argument);
}

TEST(Series, LogExamples) {
  EXPECT_EQ(log_unit(UnitSeries::one(5), 5), Series(5));
  const auto l = log_unit(UnitSeries(Series{1.0, -1.0}), 6);
  EXPECT_NEAR(l[3].real(), -1.0 / 3.0, 1e-15);
  EXPECT_EQ(l[0], cplx{});
  const auto inv = reciprocal(UnitSeries(Series{1.0, 1.0}), 12);
  const auto li = log_unit(inv, 12);
  for (int n = 1; n <= 12; ++n) EXPECT_NEAR(li[n].real(), (n % 2 ? -1.0 : 1.0) / n, 1e-14);
}

TEST(Series, ExpExamples) {
  EXPECT_EQ(exp_zero(Series(4), 4).series(), Series::one(4));
  EXPECT_NEAR(exp_zero(Series{0.0, 1.0}, 6)[4].real(), 1.0 / 24.0, 1e-16);
  const auto l = log_unit(UnitSeries(Series{1.0, -1.0}), 8);
  const auto e = exp_zero(scale(l, cplx(-2.0)), 8);
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_NEAR(e[n].real(), double(n + 1), 1e-13);
  EXPECT_THROW(exp_zero(Series{1.0, 1.0}, 3), std::invalid_argument);
}

TEST(Series, PowScalarExamples) {
  const auto p = pow_scalar(UnitSeries(Series{1.0, -1.0}), cplx(6.0), 8);
  for (unsigned j = 0; j <= 8; ++j)
    EXPECT_NEAR(p[j].real(), (j % 2 ? -1.0 : 1.0) * double(oracle::binomial(6, j)), 1e-11);
  // (1 + Bz)^{-xi}: coefficient (-1)^m (xi)_m B^m / m!.
  const double B = -0.4, xi = 2.7;
  const auto q = pow_scalar(UnitSeries(Series{1.0, B}), cplx(-xi), 10);
  double poch = 1.0, fact = 1.0;
  for (int m = 0; m <= 10; ++m) {
    if (m > 0) {
      poch *= xi + m - 1;
      fact *= m;
    }
    EXPECT_NEAR(q[m].real(), (m % 2 ? -1.0 : 1.0) * poch * std::pow(B, m) / fact, 1e-13);
  }
  EXPECT_EQ(pow_scalar(UnitSeries(Series{1.0, 3.0, 2.0}), cplx(0.0), 4).series(), Series::one(4));
}

TEST(Series, ComposeExamples) {
  expect_coeffs(compose(Series{0.0, 0.0, 1.0}, Series{0.0, 1.0, 1.0}, 3), {0.0, 0.0, 1.0, 2.0}, 0);
  Series k(8);
  for (std::size_t n = 1; n <= 8; ++n) k[n] = double(n);
  const AnalyticSeries K(k);
  expect_coeffs(compose(k, revert(K, 8).series(), 8), {0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, 1e-10);
  const auto g = compose(Series(std::vector<cplx>(9, 1.0)), Series{0.0, 0.5}, 2);
  expect_coeffs(g, {1.0, 0.5, 0.25}, 0);
  EXPECT_THROW(compose(Series{1.0}, Series{1.0, 1.0}, 2), std::invalid_argument);
}

TEST(Series, RevertExamples) {
  EXPECT_EQ(revert(AnalyticSeries::identity(6), 6).series(), AnalyticSeries::identity(6).series());
  Series l(10);
  for (std::size_t n = 1; n <= 10; ++n) l[n] = 1.0;
  const auto F = revert(AnalyticSeries(l), 10);
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_NEAR(F[n].real(), n % 2 ? 1.0 : -1.0, 1e-13);
  Series k(10);
  for (std::size_t n = 1; n <= 10; ++n) k[n] = double(n);
  const auto FK = revert(AnalyticSeries(k), 10);
  const auto lag = oracle::lagrange_revert({k.coeffs().begin(), k.coeffs().end()}, 10);
  EXPECT_NEAR(FK[2].real(), -2.0, 1e-13);
  EXPECT_NEAR(FK[3].real(), 5.0, 1e-13);
  EXPECT_NEAR(FK[4].real(), -14.0, 1e-12);
  for (std::size_t n = 2; n <= 10; ++n) EXPECT_NEAR(std::abs(FK[n] - lag[n]), 0.0, 1e-9 * std::abs(lag[n]));
}

TEST(Series, IntegrateDifferentiateExamples) {
  expect_coeffs(integrate_termwise(Series{1.0}, 3), {0.0, 1.0, 0.0, 0.0}, 0);
  const Series p{0.0, 1.0, 3.0};
  EXPECT_EQ(integrate_termwise(differentiate(p), 2), p);
  const auto inv_sq = reciprocal(UnitSeries(Series{1.0, -2.0, 1.0}), 7);
  expect_coeffs(integrate_termwise(inv_sq.series(), 8), {0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, 1e-14);
  EXPECT_EQ(differentiate(p).order(), 1u);
}

// ---------------------------------------------------------------------------
// Properties over random inputs with |c_k| <= 1.

TEST(SeriesProperty, LogExpRoundTrips) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t N = 1 + t % 32;
    const auto a = random_series(rng, N, 0.0);
    EXPECT_LE(max_abs_difference(log_unit(exp_zero(a, N), N), a, N), 1e-11);
    // log u has geometrically growing coefficients when u has zeros in the disk.
    const UnitSeries u(random_series(rng, N, 1.0));
    const auto lu = log_unit(u, N);
    EXPECT_LE(max_abs_difference(exp_zero(lu, N).series(), u.series(), N), 1e-13 * std::max(1.0, sup_norm(lu)));
  }
}

TEST(SeriesProperty, ReciprocalRoundTripIsStable) {
  // Coefficients of 1/u grow geometrically; the error is checked against that size.
  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const std::size_t N = 1 + t % 32;
    const UnitSeries u(random_series(rng, N, 1.0));
    const auto r = reciprocal(u, N);
    const double scale = std::max(1.0, sup_norm(r.series()));
    EXPECT_LE(max_abs_difference(reciprocal(r, N).series(), u.series(), N), 1e-13 * scale * scale);
    const auto prod = multiply(u, r, N);
    EXPECT_LE(max_abs_difference(prod.series(), Series::one(N), N), 1e-13 * scale);
  }
}

TEST(SeriesProperty, RevertIsBackwardStable) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const std::size_t N = 2 + t % 15;
    const auto f = random_analytic(rng, N);
    const auto F = revert(f, N);
    const double size = std::max(1.0, sup_norm(F.series()));
    EXPECT_LE(max_abs_difference(compose(f.series(), F.series(), N), Series::identity(N), N), 1e-13 * size);
  }
}

TEST(SeriesProperty, RevertMatchesBruteForceOracle) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    const std::size_t N = 2 + t % 15;
    const auto f = random_analytic(rng, N);
    const std::vector<cplx> fc(f.series().coeffs().begin(), f.series().coeffs().end());
    const auto F = revert(f, N);
    const auto brute = oracle::brute_revert(fc, N);
    const auto lag = oracle::lagrange_revert(fc, N);
    double size = 1.0;
    for (auto v : brute) size = std::max(size, std::abs(v));
    for (std::size_t n = 0; n <= N; ++n) {
      EXPECT_LE(std::abs(F[n] - brute[n]), 1e-12 * size) << "n=" << n;
      EXPECT_LE(std::abs(lag[n] - brute[n]), 1e-12 * size) << "n=" << n;
    }
  }
}

TEST(SeriesProperty, NewtonRevertAgreesWithBackSubstitution) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 200; ++t) {
    const std::size_t N = 2 + t % 31;
    const auto f = random_analytic(rng, N);
    const auto a = revert(f, N), b = revert_newton(f, N);
    const double size = std::max(1.0, sup_norm(a.series()));
    EXPECT_LE(max_abs_difference(a.series(), b.series(), N), 1e-11 * size);
  }
}

TEST(SeriesProperty, PowScalarMatchesRepeatedMultiply) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 200; ++t) {
    const std::size_t N = 1 + t % 32;
    const UnitSeries u(random_series(rng, N, 1.0));
    auto prod = u.series();
    for (int m = 2; m <= 4; ++m) {
      prod = multiply(prod, u.series(), N);
      const auto p = pow_scalar(u, cplx(m), N);
      for (std::size_t k = 0; k <= N; ++k) EXPECT_LE(std::abs(p[k] - prod[k]), 1e-12 * std::max(1.0, std::abs(prod[k])) * double(N));
    }
  }
}

TEST(SeriesProperty, MultiplyCommutativeAssociative) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    const std::size_t N = t % 32;
    const auto a = random_series(rng, N, 0.3), b = random_series(rng, N, -0.2), c = random_series(rng, N, 0.9);
    EXPECT_LE(max_abs_difference(multiply(a, b, N), multiply(b, a, N), N), 1e-13);
    EXPECT_LE(max_abs_difference(multiply(multiply(a, b, N), c, N), multiply(a, multiply(b, c, N), N), N), 1e-13 * double(N + 1));
  }
}

TEST(SeriesProperty, DifferentiateInvertsIntegrate) {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 100; ++t) {
    const std::size_t N = 1 + t % 32;
    auto a = random_series(rng, N, 0.0);
    EXPECT_LE(max_abs_difference(integrate_termwise(differentiate(a), N), a, N), 1e-15);
    EXPECT_LE(max_abs_difference(differentiate(integrate_termwise(a, N + 1)), a, N), 1e-15);
  }
}
