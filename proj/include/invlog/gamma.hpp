#pragma once

// Inverse coefficients A_n and logarithmic inverse coefficients Gamma_n(F),
//   log(F(w)/w) = 2 sum_n Gamma_n(F) w^n,   F = f^{-1},
// computed by series reversion and, independently, from the identity
//   2n Gamma_n(F) = b_n(n, f),   (z/f(z))^lambda = 1 + sum b_m(lambda, f) z^m.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "invlog/series.hpp"

namespace invlog {

enum class GammaSource { reversion, bn_identity, closed_form };

struct GammaVector {
  /// gammas[n-1] = Gamma_n.
  std::vector<cplx> gammas;
  GammaSource source = GammaSource::bn_identity;
  /// A_0..A_{N+1} when produced by reversion, otherwise empty.
  std::vector<cplx> inverse_coeffs;

  std::size_t size() const noexcept { return gammas.size(); }
  /// Gamma_n, 1-based.
  cplx operator()(std::size_t n) const { return gammas.at(n - 1); }
};

namespace detail {
inline void require_order(const AnalyticSeries& f, std::size_t n_max) {
  if (f.order() < n_max + 1)
    throw std::invalid_argument("Gamma_1..Gamma_N needs f to order N+1 or higher");
}
}  // namespace detail

/// A_0..A_N of F = f^{-1}.
inline std::vector<cplx> inverse_coeffs(const AnalyticSeries& f, std::size_t order) {
  const auto F = revert(f, order);
  return {F.series().coeffs().begin(), F.series().coeffs().end()};
}

/// (A_2, A_3, A_4) from (a_2, a_3, a_4).
inline std::array<cplx, 3> inverse_coeffs_closed_form(cplx a2, cplx a3, cplx a4) {
  return {-a2, -a3 + 2.0 * a2 * a2, -a4 + 5.0 * a2 * a3 - 5.0 * a2 * a2 * a2};
}

/// (Gamma_1, Gamma_2, Gamma_3) from (A_2, A_3, A_4).
inline std::array<cplx, 3> gamma_from_inverse_closed_form(cplx A2, cplx A3, cplx A4) {
  return {A2 / 2.0, (A3 - A2 * A2 / 2.0) / 2.0, (A4 - A2 * A3 + A2 * A2 * A2 / 3.0) / 2.0};
}

inline GammaVector gamma_via_reversion(const AnalyticSeries& f, std::size_t n_max) {
  detail::require_order(f, n_max);
  const auto F = revert(f, n_max + 1);
  const auto log_F_over_w = log_unit(over_z(F), n_max);
  GammaVector g{std::vector<cplx>(n_max), GammaSource::reversion,
                {F.series().coeffs().begin(), F.series().coeffs().end()}};
  for (std::size_t n = 1; n <= n_max; ++n) g.gammas[n - 1] = log_F_over_w[n] / 2.0;
  return g;
}

/// The coefficients b_m(lambda, f), m <= order, as the unit series (z/f)^lambda.
inline UnitSeries b_coeffs(const AnalyticSeries& f, cplx lambda, std::size_t order) {
  return pow_scalar(reciprocal(over_z(f), order), lambda, order);
}

/// Gamma_n = b_n(n, f) / (2n) with (z/f)^n built incrementally; no reversion.
inline GammaVector gamma_via_bn(const AnalyticSeries& f, std::size_t n_max) {
  detail::require_order(f, n_max);
  const auto z_over_f = reciprocal(over_z(f), n_max);
  GammaVector g{std::vector<cplx>(n_max), GammaSource::bn_identity, {}};
  auto power = z_over_f;
  for (std::size_t n = 1; n <= n_max; ++n) {
    g.gammas[n - 1] = power[n] / (2.0 * double(n));
    if (n < n_max) power = multiply(power, z_over_f, n_max);
  }
  return g;
}

/// U(lambda) with z/f = 1 - a2 z + lambda a z^2 + ...: (Gamma_1, Gamma_2).
inline std::pair<cplx, cplx> gamma12_U(cplx a2, cplx a, double lambda) {
  return {-a2 / 2.0, (a2 * a2 + 2.0 * lambda * a) / 4.0};
}

/// F(alpha) with Schwarz coefficients c1, c2, c3: (Gamma_1, Gamma_2, Gamma_3).
inline std::array<cplx, 3> gamma123_F_alpha(cplx c1, cplx c2, cplx c3, double alpha) {
  const double s = 1.0 - alpha;
  const cplx g1 = -s * c1 / 2.0;
  const cplx g2 = s / 3.0 * (-2.0 * c2 + (3.0 - 5.0 * alpha) * c1 * c1) / 4.0;
  const cplx g3 =
      s / 2.0 * (-c3 + (3.0 - 5.0 * alpha) * c1 * c2 - (3.0 * alpha - 2.0) * (2.0 * alpha - 1.0) * c1 * c1 * c1) / 6.0;
  return {g1, g2, g3};
}

/// Largest |a_n - b_n|, or with `relative` the largest |a_n - b_n| / max(1, |a_n|).
inline double max_discrepancy(const GammaVector& a, const GammaVector& b, bool relative = false) {
  if (a.size() != b.size()) throw std::invalid_argument("gamma vectors differ in length");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(a.gammas[i] - b.gammas[i]);
    if (relative) d /= std::max(1.0, std::abs(a.gammas[i]));
    m = std::max(m, d);
  }
  return m;
}

}  // namespace invlog
