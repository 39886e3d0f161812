#pragma once

// Function classes, their extremal functions, and members generated from
// Schwarz functions by solving the defining subordination in series form.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "invlog/bounds.hpp"
#include "invlog/series.hpp"

namespace invlog {

// ---------------------------------------------------------------------------
// Class descriptions

struct FullS {};
struct StarAB {
  double A;
  double B;
  double delta;  ///< (1-A)/(1-B)
};
struct Spiral {
  double alpha;
  double beta;
};
struct Gc {
  double c;
};
struct ULambda {
  double lambda;
};
struct FAlpha {
  double alpha;
};

class ClassSpec {
 public:
  using Variant = std::variant<FullS, StarAB, Spiral, Gc, ULambda, FAlpha>;

  static ClassSpec full_s() { return ClassSpec(FullS{}); }
  static ClassSpec star_ab(double A, double B) {
    detail::require(B >= -1.0 && B < A && A <= 1.0, "S*(A,B) requires -1 <= B < A <= 1");
    return ClassSpec(StarAB{A, B, (1.0 - A) / (1.0 - B)});
  }
  static ClassSpec spiral(double alpha, double beta) {
    detail::require(std::abs(alpha) < std::numbers::pi / 2, "spiral class requires |alpha| < pi/2");
    detail::require(beta >= 0.0 && beta < 1.0, "spiral class requires 0 <= beta < 1");
    return ClassSpec(Spiral{alpha, beta});
  }
  static ClassSpec gc(double c) {
    detail::require(c > 0.0 && c <= 1.0, "G(c) requires 0 < c <= 1");
    return ClassSpec(Gc{c});
  }
  static ClassSpec u_lambda(double lambda) {
    detail::require(lambda > 0.0 && lambda <= 1.0, "U(lambda) requires 0 < lambda <= 1");
    return ClassSpec(ULambda{lambda});
  }
  static ClassSpec f_alpha(double alpha) {
    detail::require(alpha >= -0.5 && alpha < 1.0, "F(alpha) requires -1/2 <= alpha < 1");
    return ClassSpec(FAlpha{alpha});
  }

  const Variant& variant() const noexcept { return v_; }
  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }

  std::string tag() const {
    static const char* names[] = {"s", "star-ab", "spiral", "gc", "u-lambda", "f-alpha"};
    return names[v_.index()];
  }

 private:
  explicit ClassSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// ---------------------------------------------------------------------------
// Schwarz functions  phi(z) = e^{i theta} z^m prod_j (z + a_j)/(1 + conj(a_j) z)

struct SchwarzFn {
  double theta = 0.0;
  std::size_t multiplicity = 1;
  std::vector<cplx> zeros;

  cplx operator()(cplx z) const {
    cplx r = std::polar(1.0, theta) * std::pow(z, double(multiplicity));
    for (const auto& a : zeros) r *= (z + a) / (1.0 + std::conj(a) * z);
    return r;
  }
};

inline Series schwarz_series(const SchwarzFn& phi, std::size_t order) {
  if (phi.multiplicity < 1) throw std::invalid_argument("Schwarz function needs a zero at the origin");
  auto s = Series::monomial(std::polar(1.0, phi.theta), phi.multiplicity, order);
  for (const auto& a : phi.zeros) {
    if (std::abs(a) >= 1.0) throw std::invalid_argument("Blaschke parameter must lie in the open unit disk");
    // (a + z) * sum_k (-conj(a) z)^k
    Series factor(order);
    cplx g = 1.0;
    for (std::size_t k = 0; k <= order; ++k, g *= -std::conj(a)) {
      factor[k] += a * g;
      if (k + 1 <= order) factor[k + 1] += g;
    }
    s = multiply(s, factor, order);
  }
  return s;
}

/// Counter-based sample stream: a fresh engine per (seed, index, attempt), so
/// parallel and serial sampling agree.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt = 0) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                      std::uint32_t(index >> 32), std::uint32_t(attempt)};
    engine_.seed(seq);
  }
  /// Uniform in [0, 1) from the top 53 bits; platform independent.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * double(n)); }
  /// Uniform point in the disk of the given radius.
  cplx in_disk(double radius) { return std::polar(radius * std::sqrt(uniform()), uniform(0.0, 2 * std::numbers::pi)); }

 private:
  std::mt19937_64 engine_;
};

inline constexpr double kMaxBlaschkeRadius = 0.95;

inline SchwarzFn sample_schwarz(SampleStream& rng, std::size_t degree_max) {
  SchwarzFn phi;
  phi.theta = rng.uniform(0.0, 2 * std::numbers::pi);
  // Mostly simple zeros; higher multiplicity exercises c1 = 0.
  const double u = rng.uniform();
  phi.multiplicity = u < 0.7 ? 1 : (u < 0.9 ? 2 : 3);
  const std::size_t d = rng.below(degree_max + 1);
  for (std::size_t j = 0; j < d; ++j) phi.zeros.push_back(rng.in_disk(kMaxBlaschkeRadius));
  return phi;
}

inline SchwarzFn sample_schwarz(std::uint64_t seed, std::size_t degree_max) {
  SampleStream rng(seed, 0);
  return sample_schwarz(rng, degree_max);
}

// ---------------------------------------------------------------------------
// Extremal functions

/// e^{-i theta} k(e^{i theta} z) for the Koebe function k(z) = z/(1-z)^2.
inline AnalyticSeries koebe(double theta, std::size_t order) {
  Series s(order);
  for (std::size_t n = 1; n <= order; ++n) s[n] = double(n) * std::polar(1.0, double(n - 1) * theta);
  s[1] = 1.0;
  return AnalyticSeries(std::move(s));
}

/// z * u for a unit series u, order u.order()+1.
inline AnalyticSeries times_z(const UnitSeries& u, std::size_t order) {
  return AnalyticSeries(shift_up(u.series(), order));
}

/// z (1 + B z^n)^{(A-B)/(nB)}; B = 0 is the limit z exp(A z^n / n).
inline AnalyticSeries k_AB_n(double A, double B, std::size_t n, std::size_t order) {
  detail::require(B >= -1.0 && B < A && A <= 1.0, "S*(A,B) requires -1 <= B < A <= 1");
  detail::require(n >= 1, "n must be >= 1");
  const std::size_t inner = order - 1;
  if (B == 0.0) return times_z(exp_zero(Series::monomial(A / double(n), n, inner), inner), order);
  auto base = Series::monomial(B, n, inner);
  base[0] = 1.0;
  return times_z(pow_scalar(UnitSeries(base), cplx((A - B) / (double(n) * B)), inner), order);
}

/// z / (1 - z^n)^{gamma/n}, gamma = 2(1-beta)cos(alpha).
inline AnalyticSeries spiral_extremal(double alpha, double beta, std::size_t n, std::size_t order) {
  detail::require(n >= 1, "n must be >= 1");
  const double gamma = 2.0 * (1.0 - beta) * std::cos(alpha);
  const std::size_t inner = order - 1;
  auto base = Series::monomial(-1.0, n, inner);
  base[0] = 1.0;
  return times_z(pow_scalar(UnitSeries(base), cplx(-gamma / double(n)), inner), order);
}

/// f with f'(z) = (1 - z^m)^{c/m}.
inline AnalyticSeries gc_extremal(double c, std::size_t m, std::size_t order) {
  detail::require(m >= 1, "m must be >= 1");
  auto base = Series::monomial(-1.0, m, order - 1);
  base[0] = 1.0;
  const auto fp = pow_scalar(UnitSeries(base), cplx(c / double(m)), order - 1);
  return AnalyticSeries(integrate_termwise(fp.series(), order));
}

/// f(z) = z / (1 - a2 z + lambda z int_0^z omega(t) dt).
inline AnalyticSeries u_lambda_member(cplx a2, const Series& omega, double lambda, std::size_t order) {
  const std::size_t inner = order - 1;
  auto denom = shift_up(scale(integrate_termwise(omega, inner), cplx(lambda)), inner);
  denom[0] += 1.0;
  if (inner >= 1) denom[1] -= a2;
  return times_z(reciprocal(UnitSeries(denom), inner), order);
}

/// omega(t) = (t + a)/(1 + a t) as a series.
inline Series mobius_series(cplx a, std::size_t order) {
  Series s(order);
  cplx g = 1.0;
  for (std::size_t k = 0; k <= order; ++k, g *= -a) {
    s[k] += a * g;
    if (k + 1 <= order) s[k + 1] += g;
  }
  return s;
}

/// The U(lambda) function attaining both Gamma_1 and Gamma_2 bounds:
/// a2 = 1 + lambda v(a), omega(t) = (t + a)/(1 + a t), a in [0, 1).
inline AnalyticSeries u_lambda_extremal(double lambda, double a, std::size_t order) {
  return u_lambda_member(1.0 + lambda * v_of_x(a), mobius_series(a, order), lambda, order);
}

enum class FAlphaVariant { pow1, pow2, pow3, halfconvex };

/// pow1: f' = (1-z)^{-2(1-a)}; pow2: f' = (1-z^2)^{-(1-a)};
/// pow3: f' = (1-z^3)^{-2(1-a)/3}; halfconvex: (z - z^2/2)/(1-z)^2.
inline AnalyticSeries f_alpha_extremal(double alpha, FAlphaVariant variant, std::size_t order) {
  const std::size_t inner = order - 1;
  auto power_derivative = [&](std::size_t m, double mu) {
    auto base = Series::monomial(-1.0, m, inner);
    base[0] = 1.0;
    const auto fp = pow_scalar(UnitSeries(base), cplx(mu), inner);
    return AnalyticSeries(integrate_termwise(fp.series(), order));
  };
  switch (variant) {
    case FAlphaVariant::pow1: return power_derivative(1, -2.0 * (1.0 - alpha));
    case FAlphaVariant::pow2: return power_derivative(2, -(1.0 - alpha));
    case FAlphaVariant::pow3: return power_derivative(3, -2.0 * (1.0 - alpha) / 3.0);
    case FAlphaVariant::halfconvex: {
      const UnitSeries one_minus_z(Series{1.0, -1.0});
      const auto inv_sq = reciprocal(multiply(one_minus_z, one_minus_z, inner), inner);
      return times_z(multiply(UnitSeries(Series{1.0, -0.5}), inv_sq, inner), order);
    }
  }
  throw std::invalid_argument("unknown F(alpha) extremal");
}

/// l(z) = z/(1-z).
inline AnalyticSeries line_map(std::size_t order) {
  Series s(order);
  for (std::size_t n = 1; n <= order; ++n) s[n] = 1.0;
  return AnalyticSeries(std::move(s));
}

// ---------------------------------------------------------------------------
// Members from Schwarz functions

namespace detail {

/// f with zf'/f - 1 = p, i.e. f = z exp(int_0^z p(t)/t dt); p(0) = 0.
inline AnalyticSeries from_log_derivative(const Series& p, std::size_t order) {
  const std::size_t inner = order - 1;
  const auto log_f_over_z = integrate_termwise(divide_by_z(p.truncated(inner + 1)), inner);
  return times_z(exp_zero(log_f_over_z, inner), order);
}

/// f with zf''/f' = q, i.e. f' = exp(int_0^z q(t)/t dt), f = int f'; q(0) = 0.
inline AnalyticSeries from_derivative_log_derivative(const Series& q, std::size_t order) {
  const std::size_t inner = order - 1;
  const auto log_fp = integrate_termwise(divide_by_z(q.truncated(inner + 1)), inner);
  return AnalyticSeries(integrate_termwise(exp_zero(log_fp, inner).series(), order));
}

/// w * phi / (1 + b phi)
inline Series mobius_times(cplx w, cplx b, const Series& phi, std::size_t order) {
  auto den = scale(phi, b);
  den[0] += 1.0;
  return scale(multiply(phi, reciprocal(UnitSeries(den.truncated(order)), order).series(), order), w);
}

}  // namespace detail

/// Solve the subordination defining the class with the given Schwarz
/// function phi (c0 = 0):
///   S*(A,B):  zf'/f = (1 + A phi)/(1 + B phi)           (FullS uses A=1, B=-1)
///   spiral:   zf'/f - 1 = 2(1-beta)cos(a) e^{ia} phi/(1-phi)
///   G(c):     zf''/f' = -c phi/(1-phi)
///   F(alpha): zf''/f' = 2(1-alpha) phi/(1-phi)
///   U(lambda): u_lambda_member with omega = phi/z and the supplied a2.
inline AnalyticSeries member_from_schwarz(const ClassSpec& spec, const Series& phi, std::size_t order,
                                          cplx u_lambda_a2 = 0.0) {
  if (phi[0] != cplx{}) throw std::invalid_argument("Schwarz function must vanish at the origin");
  return std::visit(
      [&](const auto& cls) -> AnalyticSeries {
        using T = std::decay_t<decltype(cls)>;
        if constexpr (std::is_same_v<T, FullS>) {
          return detail::from_log_derivative(detail::mobius_times(2.0, -1.0, phi, order), order);
        } else if constexpr (std::is_same_v<T, StarAB>) {
          return detail::from_log_derivative(detail::mobius_times(cls.A - cls.B, cls.B, phi, order), order);
        } else if constexpr (std::is_same_v<T, Spiral>) {
          const cplx w = 2.0 * (1.0 - cls.beta) * std::cos(cls.alpha) * std::polar(1.0, cls.alpha);
          return detail::from_log_derivative(detail::mobius_times(w, -1.0, phi, order), order);
        } else if constexpr (std::is_same_v<T, Gc>) {
          return detail::from_derivative_log_derivative(detail::mobius_times(-cls.c, -1.0, phi, order), order);
        } else if constexpr (std::is_same_v<T, FAlpha>) {
          return detail::from_derivative_log_derivative(
              detail::mobius_times(2.0 * (1.0 - cls.alpha), -1.0, phi, order), order);
        } else {
          static_assert(std::is_same_v<T, ULambda>);
          return u_lambda_member(u_lambda_a2, divide_by_z(phi.truncated(order + 1)), cls.lambda, order);
        }
      },
      spec.variant());
}

inline AnalyticSeries member_from_schwarz(const ClassSpec& spec, const SchwarzFn& phi, std::size_t order,
                                          cplx u_lambda_a2 = 0.0) {
  return member_from_schwarz(spec, schwarz_series(phi, order + 1), order, u_lambda_a2);
}

/// A sampled class member together with what generated it.
struct ClassMember {
  AnalyticSeries f;
  SchwarzFn phi;
  cplx a2{};      ///< U(lambda) only
  cplx omega0{};  ///< U(lambda) only: omega(0) = a
  std::uint64_t attempt = 0;
};

inline constexpr std::size_t kSampleDegreeMax = 4;
inline constexpr std::uint64_t kMaxResample = 16;

/// Deterministic class member for (seed, index). A draw whose series is not
/// finite is replaced by the next attempt of the same stream.
inline ClassMember sample_member(const ClassSpec& spec, std::uint64_t seed, std::uint64_t index, std::size_t order) {
  for (std::uint64_t attempt = 0; attempt < kMaxResample; ++attempt) {
    SampleStream rng(seed, index, attempt);
    auto phi = sample_schwarz(rng, kSampleDegreeMax);
    cplx a2{}, omega0{};
    if (const auto* u = spec.get_if<ULambda>()) {
      const auto phi_s = schwarz_series(phi, 2);
      omega0 = phi_s[1];
      // |a2| <= 1 + lambda v(|a|); weight toward the rim.
      const double radius = 1.0 + u->lambda * v_of_x(std::min(1.0, std::abs(omega0)));
      a2 = std::polar(radius * std::pow(rng.uniform(), 0.25), rng.uniform(0.0, 2 * std::numbers::pi));
    }
    auto f = member_from_schwarz(spec, phi, order, a2);
    if (f.series().all_finite()) return {std::move(f), std::move(phi), a2, omega0, attempt};
  }
  throw std::runtime_error("no finite sample after repeated draws");
}

}  // namespace invlog
