#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "invlog/bounds.hpp"
#include "oracles.hpp"

using namespace invlog;

namespace {

double factorial(unsigned n) {
  double f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST(BoundS, Values) {
  EXPECT_DOUBLE_EQ(bound_class_S(1).value, 1.0);
  EXPECT_DOUBLE_EQ(bound_class_S(2).value, 1.5);
  EXPECT_NEAR(bound_class_S(3).value, 10.0 / 3.0, 1e-15);
  for (unsigned n = 1; n <= 12; ++n) {
    EXPECT_NEAR(bound_class_S(n).value, double(oracle::binomial(2 * n, n)) / (2.0 * n), 1e-12 * bound_class_S(n).value);
    EXPECT_EQ(bound_star_AB(n, 1, -1).value, bound_class_S(n).value);
  }
  EXPECT_THROW(bound_class_S(0), std::invalid_argument);
}

TEST(BoundStarAB, Examples) {
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(bound_star_AB(n, 1, -1).branch, n == 1 ? "AB:top(k=n-1)" : "AB:low(k=0)");
  // delta in I_{n-1}(n): A = 0.2, B = -0.5 gives delta = 0.8/1.5 = 0.533..., I_1(2).
  const auto r = bound_star_AB(2, 0.2, -0.5);
  EXPECT_EQ(r.branch, "AB:top(k=n-1)");
  EXPECT_DOUBLE_EQ(r.value, 0.7 / 4);
  for (auto [A, B] : {std::pair{0.9, -0.1}, {0.0, -1.0}, {0.3, 0.2}})
    EXPECT_NEAR(bound_star_AB(1, A, B).value, (A - B) / 2, 1e-15);
  EXPECT_THROW(bound_star_AB(3, 0.5, 0.5), std::invalid_argument);
  EXPECT_THROW(bound_star_AB(3, 1.5, 0.0), std::invalid_argument);
  EXPECT_THROW(bound_star_AB(3, 0.5, -1.5), std::invalid_argument);
}

TEST(BoundStarAB, MiddleClauseByHand) {
  // n = 4, A = 0.2, B = -1: delta = 0.4 in I_1(4), n(1-delta) = 2.4 not integral.
  const auto r = bound_star_AB(4, 0.2, -1.0);
  EXPECT_EQ(r.branch, "AB:mid(k=1)");
  // (n-k)/(2n^2) prod_{j=0}^{2} (4*1.2 - j)/(1+j)
  const double want = 3.0 / 32.0 * (4.8 * 3.8 * 2.8 / 6.0);
  EXPECT_NEAR(r.value, want, 1e-14);
}

TEST(BoundStarAB, IntegralSeamUsesFullProduct) {
  // n = 4, delta = 1/4 exactly: n(1-delta) = 3, k = 1.
  const double B = -1.0, A = 1.0 - 0.25 * (1.0 - B);
  const auto r = bound_star_AB(4, A, B);
  EXPECT_EQ(r.branch, "AB:low(k=1 integral)");
  EXPECT_NEAR(r.value, star_ab_clause_value(4, A, B, 1), 1e-15);
}

TEST(BoundStarAB, SeamsAreLogged) {
  // Both sides of every seam k/n select different clauses; both values are printed.
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t k = 1; k < n; ++k) {
      const double B = -0.8;
      auto A_of = [&](double delta) { return 1.0 - delta * (1.0 - B); };
      const double d = double(k) / double(n);
      const auto lo = bound_star_AB(n, A_of(d - 1e-7), B), hi = bound_star_AB(n, A_of(d + 1e-7), B);
      EXPECT_NE(lo.branch, hi.branch) << "n=" << n << " k=" << k;
      std::printf("seam n=%zu k=%zu: %s %.12g | %s %.12g\n", n, k, lo.branch.c_str(), lo.value, hi.branch.c_str(),
                  hi.value);
    }
}

TEST(BoundStarOrder, Examples) {
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_NEAR(bound_star_order(n, 0).value, bound_class_S(n).value, 1e-12);
  for (std::size_t n = 2; n <= 6; ++n) {
    const double beta = (double(n) - 0.5) / double(n);
    EXPECT_NEAR(bound_star_order(n, beta).value, (1 - beta) / double(n), 1e-15);
  }
  EXPECT_NEAR(bound_star_order(2, 0.6).value, 0.2, 1e-15);
  // Middle clause hand value: n = 2 with k = 1 written as the middle product.
  EXPECT_NEAR(star_ab_clause_value(2, -0.2, -1.0, 2, 1), 1.6 / 8, 1e-15);
  const auto mid = bound_star_order(5, 0.3);
  EXPECT_EQ(mid.branch, "order:mid(k=1)");
  EXPECT_FALSE(mid.deviation.empty());
  EXPECT_TRUE(bound_star_order(5, 0.0).deviation.empty());
}

TEST(BoundSpiral, Examples) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (double beta : {0.0, 0.1, 0.45, 0.7, 0.95}) {
      const auto s = bound_spiral(n, 0.0, beta), o = bound_star_order(n, beta);
      EXPECT_NEAR(s.value, o.value, 1e-12 * o.value) << n << " " << beta;
    }
  const double alpha = 0.9;
  for (std::size_t n = 2; n <= 6; ++n) {
    const double beta = (double(n) - 0.3) / double(n);
    const auto r = bound_spiral(n, alpha, beta);
    EXPECT_NEAR(r.value, (1 - beta) * std::cos(alpha) / double(n), 1e-15);
    EXPECT_FALSE(r.deviation.empty());
  }
  // n = 2, beta = 0: |4e^{-ia}cos a| |4e^{-ia}cos a - 1| / 2 / 4.
  const std::complex<double> w = 4.0 * std::cos(alpha) * std::polar(1.0, -alpha);
  EXPECT_NEAR(bound_spiral(2, alpha, 0.0).value, std::abs(w) * std::abs(w - 1.0) / 2.0 / 4.0, 1e-14);
  EXPECT_NEAR(bound_spiral(1, alpha, 0.0).value, std::cos(alpha), 1e-15);
  EXPECT_THROW(bound_spiral(2, 2.0, 0.0), std::invalid_argument);
}

TEST(BoundGc, BnClauses) {
  for (std::size_t m = 1; m <= 8; ++m) EXPECT_NEAR(bound_bn_Gc(m, 1.0, 1.0), 1.0 / (2.0 * m), 1e-15);
  for (unsigned n = 1; n <= 6; ++n)
    EXPECT_NEAR(bound_bn_Gc(n, n, 1.0), double(oracle::binomial(2 * n - 1, n)) / std::pow(2.0, n), 1e-12);
  for (double lambda : {1.5, 2.0, 3.7})
    for (double c : {0.3, 1.0}) {
      const auto fl = std::size_t(std::floor(lambda));
      double p = 1;
      for (std::size_t j = 0; j < fl; ++j) p *= (lambda * c + double(j)) / double(j + 1);
      const double tail = double(fl) / (double(fl + 2) * std::pow(1 + c, double(fl))) * p;
      EXPECT_NEAR(bound_bn_Gc(fl + 2, lambda, c), tail, 1e-14);
      std::printf("lambda=%g c=%g m=%zu: %.12g, m=%zu: %.12g\n", lambda, c, fl + 1, bound_bn_Gc(fl + 1, lambda, c),
                  fl + 2, bound_bn_Gc(fl + 2, lambda, c));
    }
}

TEST(BoundGc, Values) {
  EXPECT_DOUBLE_EQ(bound_Gc(1, 1.0).value, 0.25);
  EXPECT_DOUBLE_EQ(bound_Gc(2, 1.0).value, 3.0 / 16.0);
  for (unsigned n = 1; n <= 12; ++n) {
    const double want = factorial(2 * n - 1) / (factorial(n) * factorial(n) * std::pow(2.0, n + 1));
    EXPECT_NEAR(bound_Gc(n, 1.0).value, want, 1e-12);
  }
  EXPECT_THROW(bound_Gc(2, 0.0), std::invalid_argument);
}

TEST(VOfX, Values) {
  EXPECT_DOUBLE_EQ(v_of_x(0.0), 0.5);
  EXPECT_DOUBLE_EQ(v_of_x(1.0), 1.0);
  EXPECT_NEAR(v_of_x(0.5), 2.0 - 3.0 * std::log(1.5), 1e-15);
  EXPECT_NEAR(v_of_x(0.5), 0.78360, 1e-5);
  for (int i = 0; i <= 200; ++i) {
    const double x = i / 200.0;
    EXPECT_NEAR(v_of_x(x), oracle::v_quadrature(x), 1e-10) << x;
  }
  // The two evaluation branches agree where they meet.
  EXPECT_NEAR(v_of_x(0.125 - 1e-15), v_of_x(0.125), 1e-14);
  EXPECT_THROW(v_of_x(1.5), std::invalid_argument);
}

TEST(BoundU, Values) {
  EXPECT_DOUBLE_EQ(bound_U_gamma1(1.0, 0.0).value, 0.75);
  EXPECT_DOUBLE_EQ(bound_U_gamma2(1.0, 0.0).value, 9.0 / 16.0);
  EXPECT_NEAR(bound_U_gamma1(1e-12, 0.4).value, 0.5, 1e-12);
  EXPECT_THROW(bound_U_gamma1(1.5, 0.0), std::invalid_argument);
}

TEST(BoundF, Values) {
  EXPECT_DOUBLE_EQ(bound_F_gamma1(0).value, 0.5);
  EXPECT_DOUBLE_EQ(bound_F_gamma2(0).value, 0.25);
  EXPECT_NEAR(bound_F_gamma3(0).value, 1.0 / 6.0, 1e-15);
  EXPECT_DOUBLE_EQ(bound_F_gamma1(-0.5).value, 0.75);
  EXPECT_DOUBLE_EQ(bound_F_gamma2(-0.5).value, 11.0 / 16.0);
  EXPECT_DOUBLE_EQ(bound_F_gamma3(-0.5).value, 7.0 / 8.0);
  const double a = 0.2;
  EXPECT_NEAR((1 - a) * (3 - 5 * a) / 12, (1 - a) / 6, 1e-14);
  EXPECT_NEAR(bound_F_gamma2(a).value, 2.0 / 15.0, 1e-14);
  EXPECT_NEAR(bound_F_gamma2(std::nextafter(a, 1.0)).value, 2.0 / 15.0, 1e-14);
  EXPECT_FALSE(bound_F_gamma3(0.18).applicable);
  EXPECT_FALSE(bound_F_gamma3(0.8).applicable);
  EXPECT_TRUE(bound_F_gamma3(7.0 / 47.0).applicable);
  EXPECT_TRUE(bound_F_gamma3(kFAlphaGamma3Lower).applicable);
  EXPECT_EQ(bound_F(3, 0.3).branch, "F:gamma3(D1uD2)");
  EXPECT_FALSE(bound_F(4, 0.0).applicable);
  EXPECT_THROW(bound_F_gamma1(-0.7), std::invalid_argument);
}

TEST(PsRegions, Examples) {
  EXPECT_EQ(ps_region(0, 0), PsRegion::D1);
  EXPECT_EQ(ps_psi_bound(0, 0), 1.0);
  EXPECT_EQ(ps_region(-3, 2), PsRegion::D6);
  EXPECT_EQ(ps_psi_bound(-3, 2), 2.0);
  EXPECT_EQ(ps_region(-0.5, 0), PsRegion::D1);
  EXPECT_EQ(ps_region(0, 5), PsRegion::Other);
  EXPECT_FALSE(ps_psi_bound(0, 5).has_value());
  auto at = [](double alpha) { return ps_regions(5 * alpha - 3, (3 * alpha - 2) * (2 * alpha - 1)); };
  auto has = [](const std::vector<PsRegion>& v, PsRegion r) { return std::find(v.begin(), v.end(), r) != v.end(); };
  EXPECT_TRUE(has(at(0.6), PsRegion::D1));
  EXPECT_TRUE(has(at(0.3), PsRegion::D2));
  EXPECT_TRUE(has(at(-0.4), PsRegion::D7));
}

TEST(PsRegions, TableOnGrid) {
  std::vector<double> grid;
  for (int i = -500; i <= 700; ++i) grid.push_back(i * 1e-3);
  const auto rep = verify_d1234(grid);
  EXPECT_EQ(rep.mismatches, 0u);
  EXPECT_GT(rep.rows.size(), 1000u);
  for (const auto& row : rep.rows)
    if (row.boundary && !row.match) std::printf("boundary alpha=%.4f not in claimed region\n", row.alpha);
}
