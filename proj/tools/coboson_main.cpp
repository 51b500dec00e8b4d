// coboson: bosonic-quality analysis of two-fermion composites from their
// Schmidt spectrum. Subcommands: analyze, wavefunction, hydrogen, verify,
// sweep. Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 empty report.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "coboson/coboson.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_verification_failure = 1;
constexpr int exit_input_error = 2;
constexpr int exit_empty_report = 3;

// --output paths are relative to COBOSON_OUTPUT_DIR when that is set.
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("COBOSON_OUTPUT_DIR")) {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  const auto path = resolve_output(output_path);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file '" + path.string() + "'");
  }
  out << text;
}

struct SpectrumSource {
  std::string file;
  int uniform_m = 0;
  double geometric_z = -1.0;
  double tail_cutoff = 1e-12;
  int dirichlet_m = 0;
  double concentration = 1.0;
  std::uint64_t seed = 42;
  double zero_threshold = coboson::default_zero_threshold;

  coboson::SchmidtSpectrum load(json& descriptor) const {
    if (!file.empty()) {
      descriptor = {{"kind", "file"}, {"path", file}};
      return coboson::io::load_spectrum(file, zero_threshold);
    }
    if (uniform_m > 0) {
      descriptor = {{"kind", "uniform"}, {"m", uniform_m}};
      return coboson::SchmidtSpectrum::uniform(uniform_m, zero_threshold);
    }
    if (geometric_z >= 0.0) {
      descriptor = {{"kind", "geometric"}, {"z", geometric_z}, {"tail_cutoff", tail_cutoff}};
      return coboson::SchmidtSpectrum::geometric(geometric_z, tail_cutoff, zero_threshold);
    }
    if (dirichlet_m > 0) {
      descriptor = {{"kind", "dirichlet"},
                    {"m", dirichlet_m},
                    {"concentration", concentration},
                    {"seed", seed}};
      return coboson::SchmidtSpectrum::random_dirichlet(dirichlet_m, concentration, seed,
                                                        zero_threshold);
    }
    throw std::invalid_argument(
        "no spectrum source given: use --spectrum, --uniform, --geometric or --dirichlet");
  }
};

int emit_report(const coboson::AnalysisReport& report, const std::string& format,
                const std::string& output_path) {
  for (const std::string& w : report.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  if (report.rows.empty()) {
    std::cerr << "error: no defined N in the requested range\n";
    return exit_empty_report;
  }
  if (format == "csv") {
    emit(coboson::report_to_csv(report), output_path);
  } else {
    emit(coboson::report_to_json(report).dump(2) + "\n", output_path);
  }
  return exit_ok;
}

int run_analyze(const SpectrumSource& source, int n_max, const std::string& format,
                const std::string& output_path) {
  json descriptor;
  const auto spectrum = source.load(descriptor);
  const int effective_n_max = n_max > 0 ? n_max : coboson::default_n_max(spectrum);
  const auto report = coboson::analyze_spectrum(spectrum, effective_n_max, descriptor);
  return emit_report(report, format, output_path);
}

int run_wavefunction(const std::string& input, double zero_threshold, int n_max,
                     const std::string& format, const std::string& output_path) {
  const auto gw = coboson::io::load_grid_wavefunction(input);
  const auto spectrum = coboson::schmidt_from_grid(gw, zero_threshold);
  const int effective_n_max = n_max > 0 ? n_max : coboson::default_n_max(spectrum);
  json descriptor = {{"kind", "wavefunction"},
                     {"path", input},
                     {"grid_a_points", gw.grid_a().points},
                     {"grid_b_points", gw.grid_b().points}};
  const auto report = coboson::analyze_spectrum(spectrum, effective_n_max, descriptor);
  return emit_report(report, format, output_path);
}

int run_hydrogen(double b_over_a0, double delta, const std::string& output_path) {
  const auto model = coboson::HydrogenTrapModel::from_ratio(b_over_a0);
  const double closed = coboson::hydrogen_purity_closed(model);

  json report = {{"tool", "coboson"},
                 {"version", coboson::version},
                 {"input", {{"kind", "hydrogen"}, {"b_over_a0", b_over_a0}, {"delta", delta}}},
                 {"purity_closed", closed}};
  std::vector<std::string> warnings;
  if (!model.in_validity_regime()) {
    warnings.push_back("b/a0 < 10: outside the intended validity regime of the model");
  }
  if (closed >= 0.1) {
    warnings.push_back("purity " + std::to_string(closed) +
                       " >= 0.1: short-range approximation degrading");
  }

  if (closed >= 1.0) {
    warnings.push_back("purity " + std::to_string(closed) +
                       " >= 1: value is not a purity, result invalid");
    report["purity_quadrature"] = nullptr;
    report["max_atoms"] = nullptr;
    report["valid"] = false;
    report["warnings"] = warnings;
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    std::cerr << "error: closed-form purity >= 1, outside the validity regime\n";
    emit(report.dump(2) + "\n", output_path);
    return exit_input_error;
  }

  const double quadrature = coboson::hydrogen_purity_quadrature(model);
  report["purity_quadrature"] = quadrature;
  report["relative_agreement"] = std::abs(quadrature - closed) / closed;
  report["max_atoms"] = coboson::max_atoms(model, delta);
  report["valid"] = true;
  report["warnings"] = warnings;
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
  emit(report.dump(2) + "\n", output_path);
  return exit_ok;
}

int run_verify(int m_max, int trials, std::uint64_t seed, bool corrupt_chi) {
  coboson::verify::Options options;
  options.m_max = m_max;
  options.trials = trials;
  options.seed = seed;
  options.corrupt_chi = corrupt_chi;
  const auto summary = coboson::verify::run_verification(options);

  for (const auto& check : summary.checks) {
    std::cout << (check.ok() ? "[PASS] " : "[FAIL] ") << check.name << " (" << check.passed
              << "/" << check.total << ")\n";
  }
  if (!summary.ok) {
    std::cout << "verification FAILED\n";
    std::cerr << "first failing spectrum (" << summary.first_failure_check
              << "): " << summary.first_failure_spectrum.dump() << '\n';
    return exit_verification_failure;
  }
  std::cout << "verification passed: " << summary.checks.size() << " checks\n";
  return exit_ok;
}

int run_sweep(const std::string& param, double from, double to, int steps, int n,
              double delta, double tail_cutoff, const std::string& format,
              const std::string& output_path) {
  if (steps < 1) throw std::invalid_argument("sweep: --steps must be >= 1");
  if (!(to >= from)) throw std::invalid_argument("sweep: need --to >= --from");

  json rows = json::array();
  std::string csv;
  const bool hydrogen = param == "b";
  csv = hydrogen ? "b_over_a0,purity_closed,purity_quadrature,max_atoms\n"
                 : param + ",mode_count,purity,chi_ratio,lower_bound,upper_bound\n";

  for (int k = 0; k < steps; ++k) {
    const double value =
        steps == 1 ? from : from + (to - from) * static_cast<double>(k) / (steps - 1);
    char line[256];
    if (hydrogen) {
      const auto model = coboson::HydrogenTrapModel::from_ratio(value);
      const double closed = coboson::hydrogen_purity_closed(model);
      if (closed >= 1.0) {
        throw std::domain_error("sweep: purity >= 1 at b/a0 = " + std::to_string(value));
      }
      const double quadrature = coboson::hydrogen_purity_quadrature(model);
      const int atoms = coboson::max_atoms(model, delta);
      rows.push_back({{"b_over_a0", value},
                      {"purity_closed", closed},
                      {"purity_quadrature", quadrature},
                      {"max_atoms", atoms}});
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%d\n", value, closed, quadrature,
                    atoms);
    } else {
      coboson::SchmidtSpectrum spectrum =
          param == "m" ? coboson::SchmidtSpectrum::uniform(
                             static_cast<int>(std::lround(value)))
                       : coboson::SchmidtSpectrum::geometric(value, tail_cutoff);
      const int m = spectrum.mode_count();
      const double p = coboson::purity(spectrum);
      const auto [lo, hi] = coboson::bounds(spectrum, n);
      double ratio_value = std::numeric_limits<double>::quiet_NaN();
      if (n <= m) {
        const auto table = coboson::chi_table(spectrum, n + 1);
        ratio_value = coboson::chi_ratio(table, n);
      }
      rows.push_back({{param.c_str(), value},
                      {"mode_count", m},
                      {"purity", p},
                      {"chi_ratio", ratio_value},
                      {"lower_bound", lo},
                      {"upper_bound", hi}});
      std::snprintf(line, sizeof(line), "%.17g,%d,%.17g,%.17g,%.17g,%.17g\n", value, m, p,
                    ratio_value, lo, hi);
    }
    csv += line;
  }

  if (format == "json") {
    json out = {{"tool", "coboson"},
                {"version", coboson::version},
                {"sweep",
                 {{"param", param}, {"from", from}, {"to", to}, {"steps", steps},
                  {"n", n}, {"delta", delta}}},
                {"rows", std::move(rows)}};
    emit(out.dump(2) + "\n", output_path);
  } else {
    emit(csv, output_path);
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bosonic-quality metrics for composite particles made of two fermions"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Metric table for a Schmidt spectrum");
  SpectrumSource source;
  int n_max = 0;
  std::string format = "json";
  std::string output_path;
  auto* src_file = analyze->add_option("--spectrum", source.file, "Spectrum file (text or JSON)");
  auto* src_uniform = analyze->add_option("--uniform", source.uniform_m, "Uniform spectrum with M modes");
  auto* src_geometric = analyze->add_option("--geometric", source.geometric_z, "Geometric spectrum with ratio z");
  auto* src_dirichlet = analyze->add_option("--dirichlet", source.dirichlet_m, "Random Dirichlet spectrum with M modes");
  src_file->excludes(src_uniform)->excludes(src_geometric)->excludes(src_dirichlet);
  src_uniform->excludes(src_geometric)->excludes(src_dirichlet);
  src_geometric->excludes(src_dirichlet);
  analyze->add_option("--tail-cutoff", source.tail_cutoff, "Geometric tail mass cutoff")
      ->capture_default_str();
  analyze->add_option("--concentration", source.concentration, "Dirichlet concentration")
      ->capture_default_str();
  analyze->add_option("--seed", source.seed, "Dirichlet seed")->capture_default_str();
  analyze->add_option("--zero-threshold", source.zero_threshold, "Mode-count threshold")
      ->capture_default_str();
  analyze->add_option("--n-max", n_max, "Largest N to report (default min(M-1, 64))");
  analyze->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  analyze->add_option("--output", output_path, "Output file (default stdout)");

  // wavefunction
  auto* wavefunction = app.add_subcommand("wavefunction", "Metric table for a grid wavefunction");
  std::string wf_input;
  double wf_zero_threshold = coboson::default_zero_threshold;
  int wf_n_max = 0;
  std::string wf_format = "json";
  std::string wf_output;
  wavefunction->add_option("--input", wf_input, "Grid wavefunction JSON file")->required();
  wavefunction->add_option("--zero-threshold", wf_zero_threshold, "Mode-count threshold")
      ->capture_default_str();
  wavefunction->add_option("--n-max", wf_n_max, "Largest N to report");
  wavefunction->add_option("--format", wf_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  wavefunction->add_option("--output", wf_output, "Output file (default stdout)");

  // hydrogen
  auto* hydrogen = app.add_subcommand("hydrogen", "Trapped-atom worked example");
  double b_over_a0 = 10.0;
  double delta = 0.1;
  std::string hy_output;
  hydrogen->add_option("--b", b_over_a0, "Trap width in units of the Bohr radius")->required();
  hydrogen->add_option("--delta", delta, "Bosonic-quality threshold")->capture_default_str();
  hydrogen->add_option("--output", hy_output, "Output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the oracle cross-check suite");
  int m_max = 6;
  int trials = 200;
  std::uint64_t seed = 42;
  bool corrupt_chi = false;
  verify->add_option("--m-max", m_max, "Largest mode count for oracle comparisons")
      ->capture_default_str();
  verify->add_option("--trials", trials, "Random spectra per check")->capture_default_str();
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify->add_flag("--corrupt-chi", corrupt_chi,
                   "Test hook: perturb chi tables so the checks must fail");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep, one report row per value");
  std::string sweep_param;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_steps = 1;
  int sweep_n = 1;
  double sweep_delta = 0.1;
  double sweep_tail = 1e-12;
  std::string sweep_format = "csv";
  std::string sweep_output;
  sweep->add_option("--param", sweep_param, "m (uniform), z (geometric) or b (hydrogen)")
      ->check(CLI::IsMember({"m", "z", "b"}))->required();
  sweep->add_option("--from", sweep_from, "First value")->required();
  sweep->add_option("--to", sweep_to, "Last value")->required();
  sweep->add_option("--steps", sweep_steps, "Number of rows")->required();
  sweep->add_option("--n", sweep_n, "N for the chi ratio columns")->capture_default_str();
  sweep->add_option("--delta", sweep_delta, "Threshold for max_atoms (param b)")
      ->capture_default_str();
  sweep->add_option("--tail-cutoff", sweep_tail, "Geometric tail mass cutoff")
      ->capture_default_str();
  sweep->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sweep->add_option("--output", sweep_output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input_error;
  }

  try {
    if (*analyze) return run_analyze(source, n_max, format, output_path);
    if (*wavefunction)
      return run_wavefunction(wf_input, wf_zero_threshold, wf_n_max, wf_format, wf_output);
    if (*hydrogen) return run_hydrogen(b_over_a0, delta, hy_output);
    if (*verify) return run_verify(m_max, trials, seed, corrupt_chi);
    if (*sweep)
      return run_sweep(sweep_param, sweep_from, sweep_to, sweep_steps, sweep_n, sweep_delta,
                       sweep_tail, sweep_format, sweep_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  return exit_input_error;
}
