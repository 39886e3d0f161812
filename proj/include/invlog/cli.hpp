#pragma once

// Command-line front end.
//
//   invlog gamma       --family koebe --n-max 3
//   invlog bounds      --class star-ab --A 1 --B -1 --n-max 4
//   invlog verify      --class gc --c 0.5 --n-max 6 --samples 500 --seed 7
//   invlog sharpness   --class star-ab --A 0.5 --B -0.5 --n 4
//   invlog explore     --class convex --n-min 4 --n-max 12 --samples 5000 --seed 1
//   invlog cross-check --samples 1000 --seed 1 --n-max 12
//
// Exit codes: 0 success, 1 violations found, 2 invalid configuration.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "invlog/report.hpp"

namespace invlog::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitBadConfig = 2;

struct RunConfig {
  std::string command;
  std::string family;
  std::string class_name;
  std::string variant = "pow1";
  std::string route = "bn";
  std::optional<double> A, B, alpha, beta, c, lambda, a, a2, theta;
  std::optional<std::size_t> n;
  std::size_t n_max = 0;
  std::size_t n_min = 1;
  std::optional<std::size_t> order;
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t index = 0;
  double tol = 1e-9;
  std::string format = "csv";
  std::string output;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw ConfigError(std::string("missing ") + flag);
  return *v;
}

/// The class named by --class; star-order and convex map onto S*(1-2beta,-1) and F(0).
inline ClassSpec make_class(const RunConfig& cfg) {
  const auto& k = cfg.class_name;
  if (k == "s") return ClassSpec::full_s();
  if (k == "star-ab") return ClassSpec::star_ab(need(cfg.A, "--A"), need(cfg.B, "--B"));
  if (k == "star-order") return ClassSpec::star_ab(1.0 - 2.0 * need(cfg.beta, "--beta"), -1.0);
  if (k == "spiral") return ClassSpec::spiral(need(cfg.alpha, "--alpha"), need(cfg.beta, "--beta"));
  if (k == "gc") return ClassSpec::gc(need(cfg.c, "--c"));
  if (k == "u-lambda") return ClassSpec::u_lambda(need(cfg.lambda, "--lambda"));
  if (k == "f-alpha") return ClassSpec::f_alpha(need(cfg.alpha, "--alpha"));
  if (k == "convex") return ClassSpec::f_alpha(0.0);
  throw ConfigError("unknown class '" + k + "'");
}

inline FAlphaVariant parse_variant(const std::string& v) {
  if (v == "pow1") return FAlphaVariant::pow1;
  if (v == "pow2") return FAlphaVariant::pow2;
  if (v == "pow3") return FAlphaVariant::pow3;
  if (v == "halfconvex") return FAlphaVariant::halfconvex;
  throw ConfigError("unknown variant '" + v + "'");
}

inline AnalyticSeries make_family(const RunConfig& cfg, std::size_t order) {
  const auto& f = cfg.family;
  const std::size_t n = cfg.n.value_or(1);
  if (f == "identity") return AnalyticSeries::identity(order);
  if (f == "koebe") return koebe(cfg.theta.value_or(0.0), order);
  if (f == "line") return line_map(order);
  if (f == "halfconvex") return f_alpha_extremal(-0.5, FAlphaVariant::halfconvex, order);
  if (f == "k-ab") {
    (void)ClassSpec::star_ab(need(cfg.A, "--A"), need(cfg.B, "--B"));
    return k_AB_n(*cfg.A, *cfg.B, n, order);
  }
  if (f == "spiral") {
    (void)ClassSpec::spiral(need(cfg.alpha, "--alpha"), need(cfg.beta, "--beta"));
    return spiral_extremal(*cfg.alpha, *cfg.beta, n, order);
  }
  if (f == "gc") {
    (void)ClassSpec::gc(need(cfg.c, "--c"));
    return gc_extremal(*cfg.c, n, order);
  }
  if (f == "u-lambda") {
    (void)ClassSpec::u_lambda(need(cfg.lambda, "--lambda"));
    const double a = cfg.a.value_or(0.5);
    if (a < 0.0 || a >= 1.0) throw ConfigError("--a must lie in [0, 1)");
    if (cfg.a2) return u_lambda_member(*cfg.a2, mobius_series(a, order), *cfg.lambda, order);
    return u_lambda_extremal(*cfg.lambda, a, order);
  }
  if (f == "f-alpha") {
    (void)ClassSpec::f_alpha(need(cfg.alpha, "--alpha"));
    return f_alpha_extremal(*cfg.alpha, parse_variant(cfg.variant), order);
  }
  if (f == "member") {
    if (!cfg.seed) throw ConfigError("--family member requires --seed");
    return sample_member(make_class(cfg), *cfg.seed, cfg.index, order).f;
  }
  throw ConfigError("unknown family '" + f + "'");
}

inline void emit(const RunConfig& cfg, const std::string& csv, const Json& json, std::ostream& out) {
  const std::string text = cfg.format == "json" ? dump_json(json) : csv;
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw ConfigError("cannot open output '" + cfg.output + "'");
  file << text;
}

inline HarnessOptions harness_options(const RunConfig& cfg) {
  HarnessOptions opt;
  opt.tol = cfg.tol;
  if (cfg.order) {
    if (*cfg.order < cfg.n_max + 1) throw ConfigError("--order must exceed --n-max");
    opt.guard = *cfg.order - cfg.n_max;
  }
  return opt;
}

inline void require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw ConfigError("--seed is required for randomized commands");
  if (cfg.samples == 0) throw ConfigError("--samples must be positive");
}

inline int cmd_gamma(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_max < 1) throw ConfigError("--n-max must be >= 1");
  const std::size_t order = cfg.order.value_or(cfg.n_max + 8);
  if (order < cfg.n_max + 1) throw ConfigError("--order must exceed --n-max");
  const auto f = make_family(cfg, order);
  GammaVector g;
  if (cfg.route == "bn") g = gamma_via_bn(f, cfg.n_max);
  else if (cfg.route == "reversion") g = gamma_via_reversion(f, cfg.n_max);
  else throw ConfigError("unknown route '" + cfg.route + "'");
  emit(cfg, gamma_csv(g), gamma_json(g), out);
  return kExitOk;
}

inline int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_max < 1) throw ConfigError("--n-max must be >= 1");
  std::vector<BoundResult> rows;
  if (cfg.class_name == "star-order") {
    const double beta = need(cfg.beta, "--beta");
    for (std::size_t n = 1; n <= cfg.n_max; ++n) rows.push_back(bound_star_order(n, beta));
  } else {
    const auto spec = make_class(cfg);
    const double abs_a = cfg.a.value_or(0.0);
    for (std::size_t n = 1; n <= cfg.n_max; ++n) rows.push_back(class_bound(spec, n, abs_a));
  }
  emit(cfg, bounds_csv(rows), bounds_json(rows), out);
  return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  require_seed(cfg);
  if (cfg.n_max < 1) throw ConfigError("--n-max must be >= 1");
  const auto rep = verify_bounds(make_class(cfg), cfg.n_max, cfg.samples, *cfg.seed, harness_options(cfg));
  emit(cfg, to_csv(rep), to_json(rep), out);
  return rep.mathematical_violations() == 0 ? kExitOk : kExitViolations;
}

inline int cmd_sharpness(const RunConfig& cfg, std::ostream& out) {
  const std::size_t n_max = cfg.n ? *cfg.n : cfg.n_max;
  if (n_max < 1) throw ConfigError("--n or --n-max must be >= 1");
  const double a = cfg.a.value_or(0.5);
  if (a < 0.0 || a >= 1.0) throw ConfigError("--a must lie in [0, 1)");
  auto opt = harness_options(cfg);
  auto rep = sharpness_check(make_class(cfg), n_max, opt, a);
  if (cfg.n) {
    // Only the requested index.
    std::erase_if(rep.rows, [&](const ReportRow& r) { return r.n != *cfg.n; });
    std::erase_if(rep.records, [&](const SampleRecord& r) { return r.n != *cfg.n; });
    std::erase_if(rep.violations, [&](const Violation& v) { return v.n != *cfg.n; });
  }
  emit(cfg, to_csv(rep), to_json(rep), out);
  return rep.mathematical_violations() == 0 ? kExitOk : kExitViolations;
}

inline int cmd_explore(const RunConfig& cfg, std::ostream& out) {
  require_seed(cfg);
  if (!cfg.class_name.empty() && cfg.class_name != "convex") throw ConfigError("explore supports --class convex only");
  const auto rep = explore_convex_large_n(cfg.n_min, cfg.n_max, cfg.samples, *cfg.seed, harness_options(cfg));
  emit(cfg, to_csv(rep), to_json(rep), out);
  return kExitOk;
}

inline int cmd_cross_check(const RunConfig& cfg, std::ostream& out) {
  require_seed(cfg);
  if (cfg.n_max < 1) throw ConfigError("--n-max must be >= 1");
  auto opt = harness_options(cfg);
  const auto rep = cross_check(cfg.samples, *cfg.seed, cfg.n_max, opt);
  emit(cfg, to_csv(rep), to_json(rep), out);
  return rep.passed() ? kExitOk : kExitViolations;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Logarithmic coefficients of inverse univalent functions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_class_params = [&](CLI::App* sub) {
    sub->add_option("--A", cfg.A);
    sub->add_option("--B", cfg.B);
    sub->add_option("--alpha", cfg.alpha);
    sub->add_option("--beta", cfg.beta);
    sub->add_option("--c", cfg.c);
    sub->add_option("--lambda", cfg.lambda);
    sub->add_option("--a", cfg.a, "|omega(0)| for U(lambda)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output, "output path, '-' for stdout");
  };
  auto add_campaign = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples);
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--tol", cfg.tol);
    sub->add_option("--order", cfg.order);
  };

  auto* gamma = app.add_subcommand("gamma", "Gamma_n of a named function");
  gamma->add_option("--family", cfg.family)->required();
  gamma->add_option("--class", cfg.class_name, "class for --family member");
  add_class_params(gamma);
  gamma->add_option("--a2", cfg.a2);
  gamma->add_option("--theta", cfg.theta);
  gamma->add_option("--n", cfg.n, "power index of k-ab / spiral / gc extremals");
  gamma->add_option("--variant", cfg.variant)->check(CLI::IsMember({"pow1", "pow2", "pow3", "halfconvex"}));
  gamma->add_option("--route", cfg.route)->check(CLI::IsMember({"bn", "reversion"}));
  gamma->add_option("--n-max", cfg.n_max)->required();
  gamma->add_option("--order", cfg.order);
  gamma->add_option("--seed", cfg.seed);
  gamma->add_option("--index", cfg.index);
  add_output(gamma);

  auto* bounds = app.add_subcommand("bounds", "bound on |Gamma_n| per class");
  bounds->add_option("--class", cfg.class_name)->required();
  add_class_params(bounds);
  bounds->add_option("--n-max", cfg.n_max)->required();
  add_output(bounds);

  auto* verify = app.add_subcommand("verify", "Monte-Carlo bound verification");
  verify->add_option("--class", cfg.class_name)->required();
  add_class_params(verify);
  verify->add_option("--n-max", cfg.n_max)->required();
  add_campaign(verify);
  add_output(verify);

  auto* sharp = app.add_subcommand("sharpness", "bound versus named extremal");
  sharp->add_option("--class", cfg.class_name)->required();
  add_class_params(sharp);
  sharp->add_option("--n", cfg.n);
  sharp->add_option("--n-max", cfg.n_max);
  sharp->add_option("--tol", cfg.tol);
  sharp->add_option("--order", cfg.order);
  add_output(sharp);

  auto* explore = app.add_subcommand("explore", "convex search for |Gamma_n| > 1/(2n)");
  explore->add_option("--class", cfg.class_name);
  explore->add_option("--n-min", cfg.n_min);
  explore->add_option("--n-max", cfg.n_max)->required();
  add_campaign(explore);
  add_output(explore);

  auto* cross = app.add_subcommand("cross-check", "reversion route versus b_n route");
  cross->add_option("--n-max", cfg.n_max)->required();
  add_campaign(cross);
  add_output(cross);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "gamma") return cmd_gamma(cfg, out);
    if (cfg.command == "bounds") return cmd_bounds(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "sharpness") return cmd_sharpness(cfg, out);
    if (cfg.command == "explore") return cmd_explore(cfg, out);
    return cmd_cross_check(cfg, out);
  } catch (const std::invalid_argument& e) {
    // ConfigError and range checks from class/bound constructors.
    err << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
}

}  // namespace invlog::cli
