#pragma once

// Sharp upper bounds on |Gamma_n(F)| for the inverse F of f, per class.
//
// Piecewise bounds are dispatched on the half-open intervals
// I_k(n) = [k/n, (k+1)/n), k = 0..n-1.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace invlog {

struct BoundResult {
  std::size_t n = 0;
  double value = 0.0;
  /// Which clause produced the value, e.g. "AB:mid(k=3)".
  std::string branch;
  bool applicable = true;
  /// Non-empty when the evaluated clause departs from the printed formula.
  std::string deviation;
};

/// k with x in [k/n, (k+1)/n), clamped to 0..n-1.
struct IntervalIndex {
  std::size_t k = 0;
};

inline constexpr double kIntegralityTol = 1e-12;

namespace detail {

inline bool near_integer(double x, double tol = kIntegralityTol) {
  return std::abs(x - std::round(x)) <= tol;
}

inline void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

/// prod_{j=0}^{terms-1} (n(A-B) + B j) / (1 + j)
inline double janowski_product(std::size_t n, double A, double B, std::size_t terms) {
  double p = 1.0;
  const double nab = double(n) * (A - B);
  for (std::size_t j = 0; j < terms; ++j) p *= (nab + B * double(j)) / double(1 + j);
  return p;
}

/// prod_{j=0}^{terms-1} |2n(1-beta) e^{-i alpha} cos(alpha) - j| / (1 + j)
inline double spiral_product(std::size_t n, double alpha, double beta, std::size_t terms) {
  const std::complex<double> w = 2.0 * double(n) * (1.0 - beta) * std::cos(alpha) * std::polar(1.0, -alpha);
  double p = 1.0;
  for (std::size_t j = 0; j < terms; ++j) p *= std::abs(w - double(j)) / double(1 + j);
  return p;
}

}  // namespace detail

/// Interval index of x in [0,1); a point within tolerance of k/n snaps to k.
inline IntervalIndex interval_index(double x, std::size_t n) {
  const double nx = double(n) * x;
  double k = detail::near_integer(nx) ? std::round(nx) : std::floor(nx);
  if (k < 0) k = 0;
  if (k > double(n - 1)) k = double(n - 1);
  return {static_cast<std::size_t>(k)};
}

/// Class S: binom(2n, n) / (2n).
inline BoundResult bound_class_S(std::size_t n) {
  detail::require(n >= 1, "n must be >= 1");
  // Same product as the Janowski clause at A = 1, B = -1.
  return {n, detail::janowski_product(n, 1.0, -1.0, n) / (2.0 * double(n)), "S", true, {}};
}

/// Value of one named Janowski clause, for logging values on both sides of a seam.
/// clause 1: full product; 2: middle clause with index k; 3: (A-B)/(2n).
inline double star_ab_clause_value(std::size_t n, double A, double B, int clause, std::size_t k = 0) {
  switch (clause) {
    case 1:
      return detail::janowski_product(n, A, B, n) / (2.0 * double(n));
    case 2:
      return double(n - k) / (2.0 * double(n) * double(n)) * detail::janowski_product(n, A, B, n - k);
    case 3:
      return (A - B) / (2.0 * double(n));
    default:
      throw std::invalid_argument("clause must be 1, 2 or 3");
  }
}

/// Janowski class S*(A,B), -1 <= B < A <= 1.
///
/// Dispatch order: delta in I_{n-1}(n) first (the (A-B)/(2n) clause), then
/// k = 0, and for n(1-delta) integral the k = 1 seam uses the full product.
inline BoundResult bound_star_AB(std::size_t n, double A, double B) {
  detail::require(n >= 1, "n must be >= 1");
  detail::require(B >= -1.0 && B < A && A <= 1.0, "S*(A,B) requires -1 <= B < A <= 1");
  const double delta = (1.0 - A) / (1.0 - B);
  const std::size_t k = interval_index(delta, n).k;
  const bool integral = detail::near_integer(double(n) * (1.0 - delta));
  BoundResult r{n, 0.0, {}, true, {}};
  if (k == n - 1) {
    r.value = star_ab_clause_value(n, A, B, 3);
    r.branch = "AB:top(k=n-1)";
  } else if (k == 0) {
    r.value = star_ab_clause_value(n, A, B, 1);
    r.branch = "AB:low(k=0)";
  } else if (integral && k == 1) {
    r.value = star_ab_clause_value(n, A, B, 1);
    r.branch = "AB:low(k=1 integral)";
  } else {
    r.value = star_ab_clause_value(n, A, B, 2, k);
    r.branch = "AB:mid(k=" + std::to_string(k) + ")";
  }
  return r;
}

/// Starlike of order beta: S*(1-2beta, -1). The middle clause uses product
/// limit n-k-1, matching the general Janowski clause.
inline BoundResult bound_star_order(std::size_t n, double beta) {
  detail::require(beta >= 0.0 && beta < 1.0, "starlike order requires 0 <= beta < 1");
  auto r = bound_star_AB(n, 1.0 - 2.0 * beta, -1.0);
  r.branch = "order:" + r.branch.substr(3);
  if (r.branch.find(":mid") != std::string::npos)
    r.deviation = "middle-clause product runs to j=n-k-1 (printed n-k+1)";
  return r;
}

/// Spiral-like S_alpha(beta), |alpha| < pi/2, 0 <= beta < 1. The top clause
/// evaluates (1-beta)cos(alpha)/n, the value the named extremal attains.
inline BoundResult bound_spiral(std::size_t n, double alpha, double beta) {
  detail::require(n >= 1, "n must be >= 1");
  detail::require(std::abs(alpha) < std::numbers::pi / 2, "spiral class requires |alpha| < pi/2");
  detail::require(beta >= 0.0 && beta < 1.0, "spiral class requires 0 <= beta < 1");
  const std::size_t k = interval_index(beta, n).k;
  const double nn = double(n);
  BoundResult r{n, 0.0, {}, true, {}};
  if (k == n - 1) {
    r.value = (1.0 - beta) * std::cos(alpha) / nn;
    r.branch = "spiral:top(k=n-1)";
    r.deviation = "(1-beta)cos(alpha)/n used (printed (1-alpha)cos(beta)/n)";
  } else if (k == 0) {
    r.value = detail::spiral_product(n, alpha, beta, n) / (2.0 * nn);
    r.branch = "spiral:low(k=0)";
  } else {
    r.value = double(n - k) / (2.0 * nn * nn) * detail::spiral_product(n, alpha, beta, n - k);
    r.branch = "spiral:mid(k=" + std::to_string(k) + ")";
  }
  return r;
}

/// Bound on |b_m(lambda, f)| for f in G(c).
inline double bound_bn_Gc(std::size_t m, double lambda, double c) {
  detail::require(m >= 1, "m must be >= 1");
  detail::require(lambda > 0.0, "lambda must be > 0");
  detail::require(c > 0.0 && c <= 1.0, "G(c) requires 0 < c <= 1");
  if (lambda <= 1.0) return lambda * c / (double(m) * (1.0 + c));
  const auto fl = static_cast<std::size_t>(std::floor(lambda));
  auto product = [&](std::size_t terms) {
    double p = 1.0;
    for (std::size_t j = 0; j < terms; ++j) p *= (lambda * c + double(j)) / double(1 + j);
    return p;
  };
  if (m <= fl + 1) return product(m) / std::pow(1.0 + c, double(m));
  return double(fl) / (double(m) * std::pow(1.0 + c, double(fl))) * product(fl);
}

/// G(c): prod_{j<n} (nc+j)/(1+j) / (2n (1+c)^n).
inline BoundResult bound_Gc(std::size_t n, double c) {
  detail::require(n >= 1, "n must be >= 1");
  detail::require(c > 0.0 && c <= 1.0, "G(c) requires 0 < c <= 1");
  const double nn = double(n);
  double p = 1.0;
  for (std::size_t j = 0; j < n; ++j) p *= (nn * c + double(j)) / double(1 + j);
  return {n, p / (2.0 * nn * std::pow(1.0 + c, nn)), "Gc", true, {}};
}

/// v(x) = int_0^1 (x+t)/(1+xt) dt = 1/x - (1-x^2)/x^2 log(1+x), v(0) = 1/2.
inline double v_of_x(double x) {
  detail::require(x >= 0.0 && x <= 1.0, "v(x) requires 0 <= x <= 1");
  if (x < 0.125) {
    // sum_k (-x)^k [x/(k+1) + 1/(k+2)]
    double sum = 0.0, p = 1.0;
    for (int k = 0; k < 40; ++k, p *= -x) sum += p * (x / (k + 1) + 1.0 / (k + 2));
    return sum;
  }
  return 1.0 / x - (1.0 - x * x) / (x * x) * std::log1p(x);
}

inline BoundResult bound_U_gamma1(double lambda, double abs_a) {
  detail::require(lambda > 0.0 && lambda <= 1.0, "U(lambda) requires 0 < lambda <= 1");
  detail::require(abs_a >= 0.0 && abs_a <= 1.0, "|a| must lie in [0,1]");
  return {1, 0.5 * (1.0 + lambda * v_of_x(abs_a)), "U:gamma1", true, {}};
}

inline BoundResult bound_U_gamma2(double lambda, double abs_a) {
  detail::require(lambda > 0.0 && lambda <= 1.0, "U(lambda) requires 0 < lambda <= 1");
  detail::require(abs_a >= 0.0 && abs_a <= 1.0, "|a| must lie in [0,1]");
  const double s = 1.0 + lambda * v_of_x(abs_a);
  return {2, 0.25 * (s * s + 2.0 * lambda * abs_a), "U:gamma2", true, {}};
}

inline constexpr double kFAlphaGamma3Lower = 0.21605468;

namespace detail {
inline void require_f_alpha(double alpha) {
  require(alpha >= -0.5 && alpha < 1.0, "F(alpha) requires -1/2 <= alpha < 1");
}
}  // namespace detail

inline BoundResult bound_F_gamma1(double alpha) {
  detail::require_f_alpha(alpha);
  return {1, (1.0 - alpha) / 2.0, "F:gamma1", true, {}};
}

inline BoundResult bound_F_gamma2(double alpha) {
  detail::require_f_alpha(alpha);
  if (alpha <= 0.2) return {2, (1.0 - alpha) * (3.0 - 5.0 * alpha) / 12.0, "F:gamma2(a)", true, {}};
  return {2, (1.0 - alpha) / 6.0, "F:gamma2(b)", true, {}};
}

/// Not applicable on (7/47, 0.21605468) and (7/10, 1).
inline BoundResult bound_F_gamma3(double alpha) {
  detail::require_f_alpha(alpha);
  if (alpha >= kFAlphaGamma3Lower && alpha <= 0.7) return {3, (1.0 - alpha) / 12.0, "F:gamma3(D1uD2)", true, {}};
  if (alpha <= 7.0 / 47.0)
    return {3, (1.0 - alpha) * (3.0 * alpha - 2.0) * (2.0 * alpha - 1.0) / 12.0, "F:gamma3(D6uD7)", true, {}};
  return {3, 0.0, "F:gamma3(uncovered)", false, {}};
}

/// Dispatch for n = 1, 2, 3; n >= 4 has no bound.
inline BoundResult bound_F(std::size_t n, double alpha) {
  switch (n) {
    case 1: return bound_F_gamma1(alpha);
    case 2: return bound_F_gamma2(alpha);
    case 3: return bound_F_gamma3(alpha);
    default:
      detail::require_f_alpha(alpha);
      return {n, 0.0, "F:none", false, {}};
  }
}

// Prokhorov-Szynal regions for max |c3 + mu c1 c2 + upsilon c1^3| over Schwarz functions.

enum class PsRegion { D1, D2, D6, D7, Other };

inline std::string to_string(PsRegion r) {
  switch (r) {
    case PsRegion::D1: return "D1";
    case PsRegion::D2: return "D2";
    case PsRegion::D6: return "D6";
    case PsRegion::D7: return "D7";
    default: return "Other";
  }
}

inline bool in_region(PsRegion region, double mu, double upsilon) {
  const double am = std::abs(mu);
  switch (region) {
    case PsRegion::D1:
      return am <= 0.5 && upsilon >= -1.0 && upsilon <= 1.0;
    case PsRegion::D2: {
      const double s = am + 1.0;
      return am >= 0.5 && am <= 2.0 && 4.0 / 27.0 * s * s * s - s <= upsilon && upsilon <= 1.0;
    }
    case PsRegion::D6:
      return am >= 2.0 && am <= 4.0 && upsilon >= (mu * mu + 8.0) / 12.0;
    case PsRegion::D7:
      return am >= 4.0 && upsilon >= 2.0 / 3.0 * (am - 1.0);
    default:
      return false;
  }
}

/// Every region containing (mu, upsilon); regions share boundary points.
inline std::vector<PsRegion> ps_regions(double mu, double upsilon) {
  std::vector<PsRegion> out;
  for (auto r : {PsRegion::D1, PsRegion::D2, PsRegion::D6, PsRegion::D7})
    if (in_region(r, mu, upsilon)) out.push_back(r);
  return out;
}

/// First region in the order D1, D2, D6, D7 containing the point.
inline PsRegion ps_region(double mu, double upsilon) {
  const auto all = ps_regions(mu, upsilon);
  return all.empty() ? PsRegion::Other : all.front();
}

inline std::optional<double> ps_psi_bound(double mu, double upsilon) {
  switch (ps_region(mu, upsilon)) {
    case PsRegion::D1:
    case PsRegion::D2: return 1.0;
    case PsRegion::D6:
    case PsRegion::D7: return std::abs(upsilon);
    default: return std::nullopt;
  }
}

struct D1234Row {
  double alpha;
  double mu;
  double upsilon;
  std::vector<PsRegion> expected;  ///< claimed region(s); two at a range seam
  std::vector<PsRegion> found;
  bool boundary;                   ///< alpha sits at an endpoint of a claimed range
  bool match;
};

struct D1234Report {
  std::vector<D1234Row> rows;
  std::size_t mismatches = 0;  ///< interior points only
  std::size_t boundary_points = 0;
  std::size_t boundary_mismatches = 0;
};

/// Check the region claimed for (mu, upsilon) = (5a-3, (3a-2)(2a-1)) at each
/// grid alpha. A point matches if any claimed region contains it. Range
/// endpoints are logged but a miss there does not count as a mismatch.
inline D1234Report verify_d1234(const std::vector<double>& alpha_grid, double seam_tol = 1e-12) {
  struct Range {
    double lo, hi;
    PsRegion region;
  };
  const Range table[] = {{0.5, 0.7, PsRegion::D1},
                         {kFAlphaGamma3Lower, 0.5, PsRegion::D2},
                         {-0.2, 7.0 / 47.0, PsRegion::D6},
                         {-0.5, -0.2, PsRegion::D7}};
  D1234Report rep;
  for (double a : alpha_grid) {
    D1234Row row{a, 5.0 * a - 3.0, (3.0 * a - 2.0) * (2.0 * a - 1.0), {}, {}, false, false};
    for (const auto& t : table) {
      if (a >= t.lo - seam_tol && a <= t.hi + seam_tol) {
        row.expected.push_back(t.region);
        if (std::abs(a - t.lo) <= seam_tol || std::abs(a - t.hi) <= seam_tol) row.boundary = true;
      }
    }
    if (row.expected.empty()) continue;
    row.found = ps_regions(row.mu, row.upsilon);
    for (auto e : row.expected)
      for (auto f : row.found)
        if (e == f) row.match = true;
    if (row.boundary) {
      ++rep.boundary_points;
      if (!row.match) ++rep.boundary_mismatches;
    } else if (!row.match) {
      ++rep.mismatches;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace invlog
