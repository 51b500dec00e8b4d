#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "coboson/chi.hpp"
#include "coboson/schmidt_spectrum.hpp"
#include "coboson/version.hpp"

namespace coboson {

// Full bosonic-quality analysis of one spectrum: purity, per-N metric rows,
// and the log-concavity certificate summary. Serializes deterministically.
struct AnalysisReport {
  nlohmann::json input_descriptor;
  std::vector<double> lambdas;
  int mode_count = 0;
  double purity = 0.0;
  int n_max_requested = 0;
  std::vector<BosonicMetrics> rows;
  double certificate_min_margin = 0.0;
  int certificate_argmin_n = 0;
  std::vector<std::string> warnings;
};

inline int default_n_max(const SchmidtSpectrum& spectrum) {
  return std::max(1, std::min(spectrum.mode_count() - 1, 64));
}

inline AnalysisReport analyze_spectrum(const SchmidtSpectrum& spectrum, int n_max,
                                       nlohmann::json input_descriptor) {
  if (n_max < 1) {
    throw std::invalid_argument("analyze_spectrum: n_max must be >= 1");
  }
  AnalysisReport report;
  report.input_descriptor = std::move(input_descriptor);
  report.lambdas = spectrum.lambdas();
  report.mode_count = spectrum.mode_count();
  report.purity = purity(spectrum);
  report.n_max_requested = n_max;

  const int m = spectrum.mode_count();
  const int n_top = std::min(n_max, m);
  if (n_max > m) {
    report.warnings.push_back("requested n_max " + std::to_string(n_max) +
                              " exceeds the nonzero mode count " + std::to_string(m) +
                              "; rows truncated at N = " + std::to_string(m));
  }
  const ChiTable table = chi_table(spectrum, std::max(n_top + 1, 2));
  report.rows.reserve(static_cast<std::size_t>(n_top));
  for (int n = 1; n <= n_top; ++n) {
    report.rows.push_back(metrics_row(table, n));
  }

  const std::vector<double> margins = log_concavity_margins(table);
  auto it = std::min_element(margins.begin(), margins.end());
  report.certificate_min_margin = *it;
  report.certificate_argmin_n = static_cast<int>(it - margins.begin()) + 1;
  return report;
}

inline nlohmann::json report_to_json(const AnalysisReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BosonicMetrics& r : report.rows) {
    rows.push_back({{"N", r.n},
                    {"chi_ratio", r.chi_ratio},
                    {"alpha", r.alpha},
                    {"epsilon_norm", r.epsilon_norm},
                    {"commutator", r.commutator},
                    {"lower_bound", r.lower_bound},
                    {"upper_bound", r.upper_bound}});
  }
  return nlohmann::json{
      {"tool", "coboson"},
      {"version", version},
      {"input", report.input_descriptor},
      {"mode_count", report.mode_count},
      {"purity", report.purity},
      {"lambdas", report.lambdas},
      {"n_max_requested", report.n_max_requested},
      {"records", std::move(rows)},
      {"log_concavity",
       {{"min_relative_margin", report.certificate_min_margin},
        {"argmin_n", report.certificate_argmin_n}}},
      {"warnings", report.warnings}};
}

namespace detail {
inline std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

inline constexpr const char* csv_header =
    "N,chi_ratio,alpha,epsilon_norm,commutator,lower_bound,upper_bound";

inline std::string report_to_csv(const AnalysisReport& report) {
  std::string out = csv_header;
  out += '\n';
  for (const BosonicMetrics& r : report.rows) {
    out += std::to_string(r.n);
    for (double v : {r.chi_ratio, r.alpha, r.epsilon_norm, r.commutator, r.lower_bound,
                     r.upper_bound}) {
      out += ',';
      out += detail::full_precision(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace coboson
