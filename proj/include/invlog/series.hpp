#pragma once

// Truncated formal power series over complex floating point coefficients.
//
// Every operation takes the target truncation order explicitly. A series
// stores c_0..c_N; coefficients past its order are zero, so an operand of
// lower order than the target acts as the polynomial it stores.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace invlog {

template <std::floating_point Real>
class BasicSeries {
 public:
  using real_type = Real;
  using value_type = std::complex<Real>;

  explicit BasicSeries(std::size_t order) : c_(order + 1) {}
  BasicSeries(std::initializer_list<value_type> c) : c_(c) {
    if (c_.empty()) c_.resize(1);
  }
  explicit BasicSeries(std::vector<value_type> c) : c_(std::move(c)) {
    if (c_.empty()) c_.resize(1);
  }

  static BasicSeries constant(value_type v, std::size_t order) {
    BasicSeries s(order);
    s.c_[0] = v;
    return s;
  }
  static BasicSeries one(std::size_t order) { return constant(value_type(1), order); }
  /// v * z^power, zero if power > order.
  static BasicSeries monomial(value_type v, std::size_t power, std::size_t order) {
    BasicSeries s(order);
    if (power <= order) s.c_[power] = v;
    return s;
  }
  static BasicSeries identity(std::size_t order) { return monomial(value_type(1), 1, order); }

  std::size_t order() const noexcept { return c_.size() - 1; }

  value_type operator[](std::size_t k) const noexcept {
    return k < c_.size() ? c_[k] : value_type{};
  }
  value_type& operator[](std::size_t k) {
    if (k >= c_.size()) throw std::out_of_range("series coefficient " + std::to_string(k) + " past order");
    return c_[k];
  }

  std::span<const value_type> coeffs() const noexcept { return c_; }

  /// Same coefficients cut or zero-padded to a new order.
  BasicSeries truncated(std::size_t order) const {
    std::vector<value_type> c(order + 1);
    std::copy_n(c_.begin(), std::min(c.size(), c_.size()), c.begin());
    return BasicSeries(std::move(c));
  }

  bool all_finite() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](const value_type& v) {
      return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
  }

  friend bool operator==(const BasicSeries&, const BasicSeries&) = default;

 private:
  std::vector<value_type> c_;
};

/// Series with constant term exactly 1, e.g. (z/f(z))^lambda.
template <std::floating_point Real>
class BasicUnitSeries {
 public:
  explicit BasicUnitSeries(BasicSeries<Real> s) : s_(std::move(s)) {
    if (s_[0] != typename BasicSeries<Real>::value_type(1))
      throw std::invalid_argument("unit series requires constant term 1");
  }
  static BasicUnitSeries one(std::size_t order) { return BasicUnitSeries(BasicSeries<Real>::one(order)); }

  const BasicSeries<Real>& series() const noexcept { return s_; }
  operator const BasicSeries<Real>&() const noexcept { return s_; }
  std::size_t order() const noexcept { return s_.order(); }
  auto operator[](std::size_t k) const noexcept { return s_[k]; }

 private:
  BasicSeries<Real> s_;
};

/// Normalized analytic function f(z) = z + a_2 z^2 + ...
template <std::floating_point Real>
class BasicAnalyticSeries {
 public:
  explicit BasicAnalyticSeries(BasicSeries<Real> s) : s_(std::move(s)) {
    using V = typename BasicSeries<Real>::value_type;
    if (s_.order() < 1 || s_[0] != V(0) || s_[1] != V(1))
      throw std::invalid_argument("analytic series requires c0 = 0 and c1 = 1");
  }
  static BasicAnalyticSeries identity(std::size_t order) {
    return BasicAnalyticSeries(BasicSeries<Real>::identity(order));
  }

  const BasicSeries<Real>& series() const noexcept { return s_; }
  operator const BasicSeries<Real>&() const noexcept { return s_; }
  std::size_t order() const noexcept { return s_.order(); }
  /// a_n, the coefficient of z^n.
  auto operator[](std::size_t k) const noexcept { return s_[k]; }

 private:
  BasicSeries<Real> s_;
};

using Series = BasicSeries<double>;
using UnitSeries = BasicUnitSeries<double>;
using AnalyticSeries = BasicAnalyticSeries<double>;
using cplx = std::complex<double>;

template <std::floating_point Real>
BasicSeries<Real> add(const BasicSeries<Real>& a, const BasicSeries<Real>& b, std::size_t order) {
  BasicSeries<Real> r(order);
  for (std::size_t k = 0; k <= order; ++k) r[k] = a[k] + b[k];
  return r;
}

template <std::floating_point Real>
BasicSeries<Real> subtract(const BasicSeries<Real>& a, const BasicSeries<Real>& b, std::size_t order) {
  BasicSeries<Real> r(order);
  for (std::size_t k = 0; k <= order; ++k) r[k] = a[k] - b[k];
  return r;
}

template <std::floating_point Real>
BasicSeries<Real> scale(const BasicSeries<Real>& a, std::complex<Real> s) {
  BasicSeries<Real> r(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) r[k] = s * a[k];
  return r;
}

/// Cauchy product modulo z^(order+1).
template <std::floating_point Real>
BasicSeries<Real> multiply(const BasicSeries<Real>& a, const BasicSeries<Real>& b, std::size_t order) {
  BasicSeries<Real> r(order);
  const std::size_t na = a.order(), nb = b.order();
  for (std::size_t k = 0; k <= order; ++k) {
    std::complex<Real> acc{};
    const std::size_t lo = k > nb ? k - nb : 0;
    const std::size_t hi = std::min(k, na);
    for (std::size_t i = lo; i <= hi; ++i) acc += a[i] * b[k - i];
    r[k] = acc;
  }
  return r;
}

template <std::floating_point Real>
BasicUnitSeries<Real> multiply(const BasicUnitSeries<Real>& a, const BasicUnitSeries<Real>& b, std::size_t order) {
  return BasicUnitSeries<Real>(multiply(a.series(), b.series(), order));
}

/// z * a, order a.order()+1 unless capped.
template <std::floating_point Real>
BasicSeries<Real> shift_up(const BasicSeries<Real>& a, std::size_t order) {
  BasicSeries<Real> r(order);
  for (std::size_t k = 1; k <= order; ++k) r[k] = a[k - 1];
  return r;
}

/// a / z for a with zero constant term; result has order a.order()-1.
template <std::floating_point Real>
BasicSeries<Real> divide_by_z(const BasicSeries<Real>& a) {
  if (a[0] != std::complex<Real>{}) throw std::invalid_argument("divide_by_z requires c0 = 0");
  if (a.order() == 0) return BasicSeries<Real>(0);
  BasicSeries<Real> r(a.order() - 1);
  for (std::size_t k = 0; k <= r.order(); ++k) r[k] = a[k + 1];
  return r;
}

/// f(z)/z for a normalized f, as a unit series of order f.order()-1.
template <std::floating_point Real>
BasicUnitSeries<Real> over_z(const BasicAnalyticSeries<Real>& f) {
  return BasicUnitSeries<Real>(divide_by_z(f.series()));
}

template <std::floating_point Real>
BasicUnitSeries<Real> reciprocal(const BasicUnitSeries<Real>& a, std::size_t order) {
  BasicSeries<Real> r(order);
  r[0] = 1;
  for (std::size_t k = 1; k <= order; ++k) {
    std::complex<Real> acc{};
    for (std::size_t i = 1; i <= k; ++i) acc += a[i] * r[k - i];
    r[k] = -acc;
  }
  return BasicUnitSeries<Real>(std::move(r));
}

/// Principal logarithm of a unit series; the result has c0 = 0.
template <std::floating_point Real>
BasicSeries<Real> log_unit(const BasicUnitSeries<Real>& a, std::size_t order) {
  // n b_n = n a_n - sum_{k=1}^{n-1} k b_k a_{n-k}, from b' a = a'.
  BasicSeries<Real> b(order);
  for (std::size_t n = 1; n <= order; ++n) {
    std::complex<Real> acc{};
    for (std::size_t k = 1; k < n; ++k) acc += Real(k) * b[k] * a[n - k];
    b[n] = a[n] - acc / Real(n);
  }
  return b;
}

template <std::floating_point Real>
BasicUnitSeries<Real> exp_zero(const BasicSeries<Real>& a, std::size_t order) {
  if (a[0] != std::complex<Real>{}) throw std::invalid_argument("exp_zero requires c0 = 0");
  // n e_n = sum_{k=1}^{n} k a_k e_{n-k}, from e' = a' e.
  BasicSeries<Real> e(order);
  e[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    std::complex<Real> acc{};
    for (std::size_t k = 1; k <= n; ++k) acc += Real(k) * a[k] * e[n - k];
    e[n] = acc / Real(n);
  }
  return BasicUnitSeries<Real>(std::move(e));
}

/// a^mu on the principal branch (a^mu = 1 at z = 0), via exp(mu log a).
template <std::floating_point Real>
BasicUnitSeries<Real> pow_scalar(const BasicUnitSeries<Real>& a, std::complex<Real> mu, std::size_t order) {
  if (mu == std::complex<Real>{}) return BasicUnitSeries<Real>::one(order);
  return exp_zero(scale(log_unit(a, order), mu), order);
}

/// outer(inner(z)) modulo z^(order+1), Horner scheme.
template <std::floating_point Real>
BasicSeries<Real> compose(const BasicSeries<Real>& outer, const BasicSeries<Real>& inner, std::size_t order) {
  if (inner[0] != std::complex<Real>{}) throw std::invalid_argument("compose requires inner c0 = 0");
  const std::size_t top = std::min(outer.order(), order);
  auto r = BasicSeries<Real>::constant(outer[top], order);
  for (std::size_t k = top; k-- > 0;) {
    r = multiply(r, inner, order);
    r[0] += outer[k];
  }
  return r;
}

/// Compositional inverse F with f(F(w)) = w, by back-substitution: the w^n
/// coefficient of f(F) is A_n plus a polynomial in a_2..a_n, A_2..A_{n-1}.
template <std::floating_point Real>
BasicAnalyticSeries<Real> revert(const BasicAnalyticSeries<Real>& f, std::size_t order) {
  auto F = BasicSeries<Real>::identity(std::max<std::size_t>(order, 1));
  for (std::size_t n = 2; n <= order; ++n) {
    // F currently carries A_n = 0, so the coefficient is exactly the lower-order remainder.
    const auto residual = compose(f.series(), F.truncated(n), n)[n];
    F[n] = -residual;
  }
  return BasicAnalyticSeries<Real>(std::move(F));
}

template <std::floating_point Real>
BasicSeries<Real> differentiate(const BasicSeries<Real>& a) {
  if (a.order() == 0) return BasicSeries<Real>(0);
  BasicSeries<Real> r(a.order() - 1);
  for (std::size_t k = 0; k <= r.order(); ++k) r[k] = Real(k + 1) * a[k + 1];
  return r;
}

/// Term-wise antiderivative with zero constant term.
template <std::floating_point Real>
BasicSeries<Real> integrate_termwise(const BasicSeries<Real>& a, std::size_t order) {
  BasicSeries<Real> r(order);
  for (std::size_t k = 1; k <= order; ++k) r[k] = a[k - 1] / Real(k);
  return r;
}

/// Newton iteration F <- F - (f(F) - w) / f'(F), doubling the correct order
/// each step. Must agree with revert().
template <std::floating_point Real>
BasicAnalyticSeries<Real> revert_newton(const BasicAnalyticSeries<Real>& f, std::size_t order) {
  const auto df = differentiate(f.series());
  auto F = BasicSeries<Real>::identity(std::max<std::size_t>(order, 1));
  for (std::size_t prec = 1; prec < order;) {
    prec = std::min(2 * prec, order);
    const auto Fp = F.truncated(prec);
    auto residual = compose(f.series(), Fp, prec);
    residual[1] -= Real(1);
    const BasicUnitSeries<Real> slope(compose(df, Fp, prec));
    const auto step = multiply(residual, reciprocal(slope, prec).series(), prec);
    F = subtract(Fp, step, prec);
    F[0] = 0;
    F[1] = 1;
  }
  return BasicAnalyticSeries<Real>(F.truncated(order));
}

template <std::floating_point Real>
std::complex<Real> evaluate(const BasicSeries<Real>& a, std::complex<Real> z) {
  std::complex<Real> r{};
  for (std::size_t k = a.order() + 1; k-- > 0;) r = r * z + a[k];
  return r;
}

/// Largest coefficient-wise |a_k - b_k| for k <= order.
template <std::floating_point Real>
Real max_abs_difference(const BasicSeries<Real>& a, const BasicSeries<Real>& b, std::size_t order) {
  Real m = 0;
  for (std::size_t k = 0; k <= order; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace invlog
