#pragma once

// JSON and CSV rendering of campaign reports.
//
// CSV: header row, fixed columns, '.' decimal separator, 17 significant digits.
//   reports: sample_id,n,abs_gamma,bound,branch,margin,flag
//   gamma:   n,re,im,abs

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "invlog/bounds.hpp"
#include "invlog/families.hpp"
#include "invlog/gamma.hpp"
#include "invlog/harness.hpp"

namespace invlog {

using Json = nlohmann::ordered_json;

/// %.17g, independent of the C locale.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // A locale with ',' decimals would break the CSV contract.
  for (auto& ch : s)
    if (ch == ',') ch = '.';
  return s;
}

inline std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

/// Quote a CSV field when it contains a separator, quote or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

inline Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json class_json(const ClassSpec& spec) {
  Json j;
  j["tag"] = spec.tag();
  std::visit(
      [&](const auto& cls) {
        using T = std::decay_t<decltype(cls)>;
        if constexpr (std::is_same_v<T, StarAB>) {
          j["A"] = cls.A;
          j["B"] = cls.B;
          j["delta"] = cls.delta;
        } else if constexpr (std::is_same_v<T, Spiral>) {
          j["alpha"] = cls.alpha;
          j["beta"] = cls.beta;
        } else if constexpr (std::is_same_v<T, Gc>) {
          j["c"] = cls.c;
        } else if constexpr (std::is_same_v<T, ULambda>) {
          j["lambda"] = cls.lambda;
        } else if constexpr (std::is_same_v<T, FAlpha>) {
          j["alpha"] = cls.alpha;
        }
      },
      spec.variant());
  return j;
}

inline Json to_json(const VerifyReport& r) {
  Json j;
  j["command"] = r.command;
  j["class"] = class_json(r.spec);
  j["n_max"] = r.n_max;
  j["order"] = r.order;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json x;
    x["n"] = row.n;
    x["empirical_max_abs_gamma"] = row.empirical_max_abs_gamma;
    x["bound"] = optional_json(row.bound);
    x["margin"] = optional_json(row.margin);
    x["sharpness_gap"] = optional_json(row.sharpness_gap);
    x["branch"] = row.branch;
    x["deviation"] = row.deviation;
    x["extremal"] = row.extremal;
    x["argmax_sample"] = row.argmax_sample;
    rows.push_back(std::move(x));
  }
  j["rows"] = std::move(rows);
  Json viol = Json::array();
  for (const auto& v : r.violations)
    viol.push_back(Json{{"sample_id", v.sample_id}, {"n", v.n}, {"excess", v.excess}, {"flag", v.flag}});
  j["violations"] = std::move(viol);
  j["mathematical_violations"] = r.mathematical_violations();
  Json res = Json::array();
  for (const auto& x : r.resampled) res.push_back(Json{{"sample_id", x.sample_id}, {"attempts", x.attempts}});
  j["resampled"] = std::move(res);
  return j;
}

inline Json to_json(const CrossCheckReport& r) {
  Json j;
  j["command"] = "cross-check";
  j["n_max"] = r.n_max;
  j["order"] = r.order;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  j["max_abs_discrepancy"] = r.max_abs_discrepancy;
  j["max_scaled_discrepancy"] = r.max_scaled_discrepancy;
  j["passed"] = r.passed();
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"n", row.n},
                        {"max_abs_discrepancy", row.max_abs_discrepancy},
                        {"max_scaled_discrepancy", row.max_scaled_discrepancy},
                        {"argmax_sample", row.argmax_sample}});
  j["rows"] = std::move(rows);
  return j;
}

inline Json to_json(const ExploreReport& r) {
  Json j;
  j["command"] = "explore";
  j["class"] = "convex";
  j["n_min"] = r.n_min;
  j["n_max"] = r.n_max;
  j["order"] = r.order;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"n", row.n},
                        {"max_ratio", row.max_ratio},
                        {"argmax_sample", row.argmax_sample},
                        {"exceed_count", row.exceed_count},
                        {"line_map_ratio", row.line_map_ratio}});
  j["rows"] = std::move(rows);
  j["proven_range_violated"] = r.proven_range_violated();
  return j;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline const char* kReportCsvHeader = "sample_id,n,abs_gamma,bound,branch,margin,flag\n";

inline std::string records_csv(const std::vector<SampleRecord>& records) {
  std::ostringstream os;
  os << kReportCsvHeader;
  for (const auto& r : records)
    os << r.sample_id << ',' << r.n << ',' << format_number(r.abs_gamma) << ',' << format_optional(r.bound) << ','
       << csv_field(r.branch) << ',' << format_optional(r.margin) << ',' << csv_field(r.flag) << '\n';
  return os.str();
}

inline std::string to_csv(const VerifyReport& r) { return records_csv(r.records); }
inline std::string to_csv(const ExploreReport& r) { return records_csv(r.records); }

/// Cross-check rows: abs_gamma is the b_n-route value, margin is tol minus the
/// scaled discrepancy, branch names the sampled class.
inline std::string to_csv(const CrossCheckReport& r) {
  std::ostringstream os;
  os << kReportCsvHeader;
  for (const auto& x : r.records) {
    const double scaled = x.discrepancy / std::max(1.0, x.abs_gamma);
    os << x.sample_id << ',' << x.n << ',' << format_number(x.abs_gamma) << ",n/a," << csv_field(x.class_tag) << ','
       << format_number(r.tolerance - scaled) << ',' << (scaled <= r.tolerance ? "ok" : "mismatch") << '\n';
  }
  return os.str();
}

inline std::string gamma_csv(const GammaVector& g) {
  std::ostringstream os;
  os << "n,re,im,abs\n";
  for (std::size_t n = 1; n <= g.size(); ++n)
    os << n << ',' << format_number(g(n).real()) << ',' << format_number(g(n).imag()) << ','
       << format_number(std::abs(g(n))) << '\n';
  return os.str();
}

inline Json gamma_json(const GammaVector& g) {
  Json rows = Json::array();
  for (std::size_t n = 1; n <= g.size(); ++n)
    rows.push_back(Json{{"n", n}, {"re", g(n).real()}, {"im", g(n).imag()}, {"abs", std::abs(g(n))}});
  return Json{{"command", "gamma"}, {"rows", std::move(rows)}};
}

inline std::string bounds_csv(const std::vector<BoundResult>& rows) {
  std::ostringstream os;
  os << "n,bound,branch,deviation\n";
  for (const auto& b : rows)
    os << b.n << ',' << (b.applicable ? format_number(b.value) : "n/a") << ',' << csv_field(b.branch) << ','
       << csv_field(b.deviation) << '\n';
  return os.str();
}

inline Json bounds_json(const std::vector<BoundResult>& rows) {
  Json arr = Json::array();
  for (const auto& b : rows)
    arr.push_back(Json{{"n", b.n},
                       {"bound", b.applicable ? Json(b.value) : Json(nullptr)},
                       {"branch", b.branch},
                       {"applicable", b.applicable},
                       {"deviation", b.deviation}});
  return Json{{"command", "bounds"}, {"rows", std::move(arr)}};
}

}  // namespace invlog
