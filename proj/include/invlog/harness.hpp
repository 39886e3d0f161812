#pragma once

// Verification campaigns over sampled class members: bound checks, sharpness
// at the named extremals, cross-checks of the two Gamma routes, and the
// exploratory convex search for n >= 4.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "invlog/bounds.hpp"
#include "invlog/families.hpp"
#include "invlog/gamma.hpp"

namespace invlog {

struct HarnessOptions {
  double tol = 1e-9;
  /// Extra series coefficients past the largest requested n.
  std::size_t guard = 8;
  /// 0 = take INVLOG_THREADS, else hardware concurrency.
  unsigned threads = 0;
  /// Keep one record per (sample, n) for CSV output.
  bool keep_records = true;
};

inline unsigned worker_count(unsigned requested) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (requested == 0) {
    if (const char* env = std::getenv("INVLOG_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) return std::min<unsigned>(unsigned(v), hw);
    }
    return hw;
  }
  return requested;
}

/// Runs fn(i) for i in [0, count); each index writes only its own slot, so
/// results do not depend on the worker count.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
}

// ---------------------------------------------------------------------------
// Bounds and extremals per class

/// Bound on |Gamma_n| for the class. U(lambda) bounds depend on a = omega(0).
inline BoundResult class_bound(const ClassSpec& spec, std::size_t n, double u_abs_a = 0.0) {
  return std::visit(
      [&](const auto& cls) -> BoundResult {
        using T = std::decay_t<decltype(cls)>;
        if constexpr (std::is_same_v<T, FullS>) {
          return bound_class_S(n);
        } else if constexpr (std::is_same_v<T, StarAB>) {
          return bound_star_AB(n, cls.A, cls.B);
        } else if constexpr (std::is_same_v<T, Spiral>) {
          return bound_spiral(n, cls.alpha, cls.beta);
        } else if constexpr (std::is_same_v<T, Gc>) {
          return bound_Gc(n, cls.c);
        } else if constexpr (std::is_same_v<T, ULambda>) {
          if (n == 1) return bound_U_gamma1(cls.lambda, u_abs_a);
          if (n == 2) return bound_U_gamma2(cls.lambda, u_abs_a);
          return {n, 0.0, "U:none", false, {}};
        } else {
          return bound_F(n, cls.alpha);
        }
      },
      spec.variant());
}

struct NamedExtremal {
  std::string name;
  AnalyticSeries f;
  /// False for a probe function on a clause without a named extremal.
  bool asserted;
};

/// The function named as attaining the active clause of the bound on |Gamma_n|.
inline std::optional<NamedExtremal> sharp_extremal(const ClassSpec& spec, std::size_t n, std::size_t order,
                                                   double u_a = 0.5) {
  const auto branch = class_bound(spec, n, u_a).branch;
  return std::visit(
      [&](const auto& cls) -> std::optional<NamedExtremal> {
        using T = std::decay_t<decltype(cls)>;
        if constexpr (std::is_same_v<T, FullS>) {
          return NamedExtremal{"koebe", koebe(0.0, order), true};
        } else if constexpr (std::is_same_v<T, StarAB>) {
          if (branch.starts_with("AB:top")) return NamedExtremal{"k_AB_n", k_AB_n(cls.A, cls.B, n, order), true};
          const bool low = branch.starts_with("AB:low");
          return NamedExtremal{"k_AB_1", k_AB_n(cls.A, cls.B, 1, order), low};
        } else if constexpr (std::is_same_v<T, Spiral>) {
          if (branch.starts_with("spiral:top"))
            return NamedExtremal{"f_alpha_beta_n", spiral_extremal(cls.alpha, cls.beta, n, order), true};
          // z/(1-z)^{gamma e^{i alpha}}, the class member generated by phi(z) = z.
          const bool low = branch.starts_with("spiral:low");
          return NamedExtremal{"spiral_member_phi_z",
                               member_from_schwarz(spec, Series::identity(order + 1), order), low};
        } else if constexpr (std::is_same_v<T, Gc>) {
          return NamedExtremal{"f_c", gc_extremal(cls.c, 1, order), true};
        } else if constexpr (std::is_same_v<T, ULambda>) {
          if (n > 2) return std::nullopt;
          return NamedExtremal{"u_lambda_extremal", u_lambda_extremal(cls.lambda, u_a, order), true};
        } else {
          if (branch == "F:gamma1" || branch == "F:gamma2(a)" || branch == "F:gamma3(D6uD7)")
            return NamedExtremal{"f_alpha_pow1", f_alpha_extremal(cls.alpha, FAlphaVariant::pow1, order), true};
          if (branch == "F:gamma2(b)")
            return NamedExtremal{"f_alpha_pow2", f_alpha_extremal(cls.alpha, FAlphaVariant::pow2, order), true};
          if (branch == "F:gamma3(D1uD2)")
            return NamedExtremal{"f_alpha_pow3", f_alpha_extremal(cls.alpha, FAlphaVariant::pow3, order), true};
          return std::nullopt;
        }
      },
      spec.variant());
}

// ---------------------------------------------------------------------------
// Reports

struct ReportRow {
  std::size_t n = 0;
  double empirical_max_abs_gamma = 0.0;
  std::optional<double> bound;
  std::optional<double> margin;
  std::optional<double> sharpness_gap;
  std::string branch;
  std::string deviation;
  std::string extremal;
  std::uint64_t argmax_sample = 0;
};

struct Violation {
  std::uint64_t sample_id = 0;
  std::size_t n = 0;
  double excess = 0.0;
  std::string flag;  ///< "numerical" or "mathematical"
};

/// One (sample, n) observation; rendered as a CSV row.
struct SampleRecord {
  std::uint64_t sample_id = 0;
  std::size_t n = 0;
  double abs_gamma = 0.0;
  std::optional<double> bound;
  std::string branch;
  std::optional<double> margin;
  std::string flag;
};

struct Resample {
  std::uint64_t sample_id;
  std::uint64_t attempts;
};

struct VerifyReport {
  std::string command;  ///< "verify" or "sharpness"
  ClassSpec spec = ClassSpec::full_s();
  std::size_t n_max = 0;
  std::size_t order = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<ReportRow> rows;
  std::vector<Violation> violations;
  std::vector<SampleRecord> records;
  std::vector<Resample> resampled;

  std::size_t mathematical_violations() const {
    return std::size_t(std::count_if(violations.begin(), violations.end(),
                                     [](const Violation& v) { return v.flag == "mathematical"; }));
  }
};

/// Tolerance scaled to the size of the compared value.
inline double scaled_tol(double tol, double value) { return tol * std::max(1.0, std::abs(value)); }

inline std::string violation_flag(double excess, double allowed) {
  return excess <= 10.0 * allowed ? "numerical" : "mathematical";
}

// ---------------------------------------------------------------------------
// Campaigns

/// Sample `samples` members and check |Gamma_n| <= bound + tol for n <= n_max.
inline VerifyReport verify_bounds(const ClassSpec& spec, std::size_t n_max, std::size_t samples, std::uint64_t seed,
                                  const HarnessOptions& opt = {}) {
  VerifyReport rep{"verify", spec, n_max, n_max + opt.guard, samples, seed, opt.tol, {}, {}, {}, {}};
  const bool per_sample_bound = spec.get_if<ULambda>() != nullptr;

  struct Outcome {
    std::vector<double> abs_gamma;
    double abs_a = 0.0;
    std::uint64_t attempt = 0;
  };
  std::vector<Outcome> out(samples);
  parallel_for(samples, worker_count(opt.threads), [&](std::size_t i) {
    const auto m = sample_member(spec, seed, i, rep.order);
    const auto g = gamma_via_bn(m.f, n_max);
    Outcome& o = out[i];
    o.abs_a = std::min(1.0, std::abs(m.omega0));
    o.attempt = m.attempt;
    for (const auto& v : g.gammas) o.abs_gamma.push_back(std::abs(v));
  });

  for (std::size_t i = 0; i < samples; ++i)
    if (out[i].attempt > 0) rep.resampled.push_back({i, out[i].attempt});

  for (std::size_t n = 1; n <= n_max; ++n) {
    ReportRow row;
    row.n = n;
    const auto fixed = class_bound(spec, n, 0.0);
    row.branch = fixed.branch;
    row.deviation = fixed.deviation;
    double best_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples; ++i) {
      const double ag = out[i].abs_gamma[n - 1];
      if (ag > row.empirical_max_abs_gamma || i == 0) {
        row.empirical_max_abs_gamma = ag;
        row.argmax_sample = i;
      }
      const auto b = per_sample_bound ? class_bound(spec, n, out[i].abs_a) : fixed;
      SampleRecord rec{i, n, ag, std::nullopt, b.branch, std::nullopt, "n/a"};
      if (b.applicable) {
        const double margin = b.value - ag;
        rec.bound = b.value;
        rec.margin = margin;
        rec.flag = "ok";
        const double allowed = scaled_tol(opt.tol, b.value);
        if (-margin > allowed) {
          rec.flag = violation_flag(-margin, allowed);
          rep.violations.push_back({i, n, -margin, rec.flag});
        }
        if (margin < best_margin) {
          best_margin = margin;
          row.bound = b.value;
          row.margin = margin;
        }
      }
      if (opt.keep_records) rep.records.push_back(std::move(rec));
    }
    if (!per_sample_bound && fixed.applicable) {
      if (auto ex = sharp_extremal(spec, n, rep.order)) {
        row.extremal = ex->name;
        row.sharpness_gap = fixed.value - std::abs(gamma_via_bn(ex->f, n)(n));
      }
    }
    rep.rows.push_back(std::move(row));
  }
  // Records are grouped by n above; present them in sample order.
  std::stable_sort(rep.records.begin(), rep.records.end(),
                   [](const SampleRecord& a, const SampleRecord& b) { return a.sample_id < b.sample_id; });
  return rep;
}

/// |Gamma_n(extremal)| against the bound for every n <= n_max. Clauses with a
/// named extremal must match within tol; others are reported only.
inline VerifyReport sharpness_check(const ClassSpec& spec, std::size_t n_max, const HarnessOptions& opt = {},
                                    double u_a = 0.5) {
  VerifyReport rep{"sharpness", spec, n_max, n_max + opt.guard, 0, 0, opt.tol, {}, {}, {}, {}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto b = class_bound(spec, n, u_a);
    ReportRow row;
    row.n = n;
    row.branch = b.branch;
    row.deviation = b.deviation;
    const auto ex = b.applicable ? sharp_extremal(spec, n, rep.order, u_a) : std::nullopt;
    SampleRecord rec{0, n, 0.0, std::nullopt, b.branch, std::nullopt, "n/a"};
    if (ex) {
      const double ag = std::abs(gamma_via_bn(ex->f, n)(n));
      row.empirical_max_abs_gamma = ag;
      row.bound = b.value;
      row.margin = b.value - ag;
      row.sharpness_gap = b.value - ag;
      row.extremal = ex->name + (ex->asserted ? "" : " (probe)");
      rec = {0, n, ag, b.value, b.branch + "|" + row.extremal, b.value - ag, "ok"};
      const double allowed = scaled_tol(opt.tol, b.value);
      if (ex->asserted && std::abs(b.value - ag) > allowed) {
        rec.flag = violation_flag(std::abs(b.value - ag), allowed);
        rep.violations.push_back({0, n, std::abs(b.value - ag), rec.flag});
      } else if (!ex->asserted) {
        rec.flag = "unasserted";
      }
    }
    rep.records.push_back(std::move(rec));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cross-check of the two Gamma routes

struct CrossCheckRow {
  std::size_t n = 0;
  double max_abs_discrepancy = 0.0;
  double max_scaled_discrepancy = 0.0;  ///< |difference| / max(1, |Gamma_n|)
  std::uint64_t argmax_sample = 0;
};

struct CrossCheckRecord {
  std::uint64_t sample_id = 0;
  std::string class_tag;
  std::size_t n = 0;
  double abs_gamma = 0.0;
  double discrepancy = 0.0;
};

struct CrossCheckReport {
  std::size_t n_max = 0;
  std::size_t order = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<CrossCheckRow> rows;
  std::vector<CrossCheckRecord> records;
  double max_abs_discrepancy = 0.0;
  double max_scaled_discrepancy = 0.0;

  bool passed() const { return max_scaled_discrepancy <= tolerance; }
};

inline constexpr std::uint64_t kParameterStream = 1ull << 31;

/// Class for cross-check sample i: cycles through the five subclasses with
/// parameters drawn from the sample's own stream.
inline ClassSpec cross_check_class(std::uint64_t seed, std::uint64_t index) {
  SampleStream rng(seed, index, kParameterStream);
  switch (index % 5) {
    case 0: {
      const double B = rng.uniform(-1.0, 0.0);
      return ClassSpec::star_ab(B + (1.0 - B) * (1.0 - rng.uniform()), B);
    }
    case 1: return ClassSpec::spiral(rng.uniform(-1.5, 1.5), rng.uniform());
    case 2: return ClassSpec::gc(1.0 - rng.uniform());
    case 3: return ClassSpec::u_lambda(1.0 - rng.uniform());
    default: return ClassSpec::f_alpha(rng.uniform(-0.5, 1.0));
  }
}

inline CrossCheckReport cross_check(std::size_t samples, std::uint64_t seed, std::size_t n_max,
                                    const HarnessOptions& opt = {}) {
  CrossCheckReport rep{n_max, n_max + opt.guard, samples, seed, opt.tol, {}, {}, 0.0, 0.0};
  struct Outcome {
    std::string tag;
    std::vector<double> abs_gamma, abs_diff;
  };
  std::vector<Outcome> out(samples);
  parallel_for(samples, worker_count(opt.threads), [&](std::size_t i) {
    const auto spec = cross_check_class(seed, i);
    const auto m = sample_member(spec, seed, i, rep.order);
    const auto bn = gamma_via_bn(m.f, n_max);
    const auto rv = gamma_via_reversion(m.f, n_max);
    out[i].tag = spec.tag();
    for (std::size_t k = 0; k < n_max; ++k) {
      out[i].abs_gamma.push_back(std::abs(bn.gammas[k]));
      out[i].abs_diff.push_back(std::abs(bn.gammas[k] - rv.gammas[k]));
    }
  });
  for (std::size_t n = 1; n <= n_max; ++n) {
    CrossCheckRow row{n, 0.0, 0.0, 0};
    for (std::size_t i = 0; i < samples; ++i) {
      const double d = out[i].abs_diff[n - 1];
      const double s = d / std::max(1.0, out[i].abs_gamma[n - 1]);
      if (d > row.max_abs_discrepancy) row.max_abs_discrepancy = d;
      if (s > row.max_scaled_discrepancy) {
        row.max_scaled_discrepancy = s;
        row.argmax_sample = i;
      }
    }
    rep.max_abs_discrepancy = std::max(rep.max_abs_discrepancy, row.max_abs_discrepancy);
    rep.max_scaled_discrepancy = std::max(rep.max_scaled_discrepancy, row.max_scaled_discrepancy);
    rep.rows.push_back(row);
  }
  if (opt.keep_records)
    for (std::size_t i = 0; i < samples; ++i)
      for (std::size_t n = 1; n <= n_max; ++n)
        rep.records.push_back({i, out[i].tag, n, out[i].abs_gamma[n - 1], out[i].abs_diff[n - 1]});
  return rep;
}

// ---------------------------------------------------------------------------
// Convex functions, n >= 4: is |Gamma_n| <= 1/(2n)?

struct ExploreRow {
  std::size_t n = 0;
  double max_ratio = 0.0;  ///< max over samples of 2n |Gamma_n|
  std::uint64_t argmax_sample = 0;
  std::size_t exceed_count = 0;
  double line_map_ratio = 0.0;
};

struct ExploreReport {
  std::size_t n_min = 0, n_max = 0, order = 0, samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<ExploreRow> rows;
  std::vector<SampleRecord> records;

  /// Ratio above 1 + tol at n <= 3, where the inequality is a theorem.
  bool proven_range_violated() const {
    return std::any_of(rows.begin(), rows.end(),
                       [&](const ExploreRow& r) { return r.n <= 3 && r.max_ratio > 1.0 + tolerance; });
  }
};

inline ExploreReport explore_convex_large_n(std::size_t n_min, std::size_t n_max, std::size_t samples,
                                            std::uint64_t seed, const HarnessOptions& opt = {}) {
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("need 1 <= n_min <= n_max");
  ExploreReport rep{n_min, n_max, n_max + opt.guard, samples, seed, opt.tol, {}, {}};
  const auto spec = ClassSpec::f_alpha(0.0);
  std::vector<std::vector<double>> ratio(samples);
  parallel_for(samples, worker_count(opt.threads), [&](std::size_t i) {
    const auto g = gamma_via_bn(sample_member(spec, seed, i, rep.order).f, n_max);
    for (std::size_t n = 1; n <= n_max; ++n) ratio[i].push_back(2.0 * double(n) * std::abs(g(n)));
  });
  const auto line = gamma_via_bn(line_map(rep.order), n_max);
  for (std::size_t n = n_min; n <= n_max; ++n) {
    ExploreRow row{n, 0.0, 0, 0, 2.0 * double(n) * std::abs(line(n))};
    for (std::size_t i = 0; i < samples; ++i) {
      const double r = ratio[i][n - 1];
      if (r > row.max_ratio) {
        row.max_ratio = r;
        row.argmax_sample = i;
      }
      if (r > 1.0 + opt.tol) ++row.exceed_count;
    }
    rep.rows.push_back(row);
  }
  if (opt.keep_records)
    for (std::size_t i = 0; i < samples; ++i)
      for (std::size_t n = n_min; n <= n_max; ++n) {
        const double b = 1.0 / (2.0 * double(n));
        const double ag = ratio[i][n - 1] * b;
        rep.records.push_back({i, n, ag, b, "convex:1/(2n)", b - ag, ratio[i][n - 1] > 1.0 + opt.tol ? "exceeds" : "ok"});
      }
  return rep;
}

}  // namespace invlog
