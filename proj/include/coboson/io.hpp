#pragma once

#include <cctype>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coboson/grid_wavefunction.hpp"
#include "coboson/schmidt_spectrum.hpp"

namespace coboson::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text spectrum format: one real per line, '#' starts a comment, blank lines
// ignored.
inline std::vector<double> parse_spectrum_text(std::istream& in) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        values.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("spectrum line " + std::to_string(line_no) +
                         ": cannot parse '" + token + "' as a number");
      }
    }
  }
  return values;
}

// JSON spectrum: either a bare array of numbers or an object carrying a
// "lambdas" array (an analysis report re-ingests this way).
inline std::vector<double> parse_spectrum_json(const nlohmann::json& j) {
  const nlohmann::json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("lambdas")) {
      throw ParseError("spectrum JSON object is missing field \"lambdas\"");
    }
    arr = &j.at("lambdas");
  }
  if (!arr->is_array() || arr->empty()) {
    throw ParseError("spectrum JSON must be a non-empty array of numbers");
  }
  std::vector<double> values;
  values.reserve(arr->size());
  for (const auto& v : *arr) {
    if (!v.is_number()) {
      throw ParseError("spectrum JSON contains a non-numeric entry");
    }
    values.push_back(v.get<double>());
  }
  return values;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Loads a spectrum from either format; JSON is detected by a leading '[' or '{'.
inline SchmidtSpectrum load_spectrum(const std::filesystem::path& path,
                                     double zero_threshold = default_zero_threshold) {
  const std::string text = read_file(path);
  std::size_t first = text.find_first_not_of(" \t\r\n");
  std::vector<double> values;
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("'" + path.string() + "': " + e.what());
    }
    values = parse_spectrum_json(j);
  } else {
    std::istringstream in(text);
    values = parse_spectrum_text(in);
  }
  if (values.empty()) {
    throw ParseError("'" + path.string() + "' contains no coefficients");
  }
  return SchmidtSpectrum::from_raw(std::move(values), zero_threshold);
}

inline constexpr const char* grid_layout_tag = "row-major-interleaved";

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) {
    throw ParseError(std::string("grid wavefunction header is missing field \"") + name + "\"");
  }
  return j.at(name);
}

inline Grid1D parse_grid(const nlohmann::json& j, const char* name) {
  const nlohmann::json& g = require_field(j, name);
  for (const char* f : {"min", "max", "points"}) {
    if (!g.contains(f)) {
      throw ParseError(std::string("grid \"") + name + "\" is missing field \"" + f + "\"");
    }
  }
  try {
    return Grid1D(g.at("min").get<double>(), g.at("max").get<double>(),
                  g.at("points").get<int>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("grid \"") + name + "\": " + e.what());
  }
}

}  // namespace detail

// Grid wavefunction file: a JSON header with both grids and the layout tag,
// plus amplitudes either inline ("amplitudes": row-major [re, im] pairs) or
// in a sidecar binary ("amplitudes_path": raw little-endian float64 pairs,
// resolved relative to the header file).
inline GridWavefunction load_grid_wavefunction(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  if (!j.is_object()) {
    throw ParseError("grid wavefunction file must be a JSON object");
  }
  const std::string layout = detail::require_field(j, "layout").get<std::string>();
  if (layout != grid_layout_tag) {
    throw ParseError("unsupported layout \"" + layout + "\", expected \"" +
                     grid_layout_tag + "\"");
  }
  const Grid1D grid_a = detail::parse_grid(j, "grid_a");
  const Grid1D grid_b = detail::parse_grid(j, "grid_b");
  const std::size_t count =
      static_cast<std::size_t>(grid_a.points) * static_cast<std::size_t>(grid_b.points);

  Eigen::MatrixXcd amp(grid_a.points, grid_b.points);
  if (j.contains("amplitudes")) {
    const nlohmann::json& arr = j.at("amplitudes");
    if (!arr.is_array() || arr.size() != count) {
      throw ParseError("\"amplitudes\" must be an array of " + std::to_string(count) +
                       " [re, im] pairs");
    }
    for (std::size_t k = 0; k < count; ++k) {
      const nlohmann::json& pair = arr.at(k);
      if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() ||
          !pair.at(1).is_number()) {
        throw ParseError("amplitude entry " + std::to_string(k) + " is not a [re, im] pair");
      }
      amp(static_cast<Eigen::Index>(k / grid_b.points),
          static_cast<Eigen::Index>(k % grid_b.points)) =
          std::complex<double>(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
  } else if (j.contains("amplitudes_path")) {
    const std::filesystem::path side =
        path.parent_path() / j.at("amplitudes_path").get<std::string>();
    std::ifstream bin(side, std::ios::binary);
    if (!bin) {
      throw ParseError("cannot open amplitude sidecar '" + side.string() + "'");
    }
    std::vector<double> raw(2 * count);
    bin.read(reinterpret_cast<char*>(raw.data()),
             static_cast<std::streamsize>(raw.size() * sizeof(double)));
    if (static_cast<std::size_t>(bin.gcount()) != raw.size() * sizeof(double)) {
      throw ParseError("amplitude sidecar '" + side.string() + "' is truncated: expected " +
                       std::to_string(raw.size() * sizeof(double)) + " bytes");
    }
    for (std::size_t k = 0; k < count; ++k) {
      amp(static_cast<Eigen::Index>(k / grid_b.points),
          static_cast<Eigen::Index>(k % grid_b.points)) =
          std::complex<double>(raw[2 * k], raw[2 * k + 1]);
    }
  } else {
    throw ParseError(
        "grid wavefunction header is missing field \"amplitudes\" (or \"amplitudes_path\")");
  }

  try {
    return GridWavefunction::from_samples(std::move(amp), grid_a, grid_b);
  } catch (const std::invalid_argument& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

inline void write_grid_wavefunction_inline(const GridWavefunction& gw,
                                           const std::filesystem::path& path) {
  nlohmann::json j;
  j["layout"] = grid_layout_tag;
  j["grid_a"] = {{"min", gw.grid_a().min}, {"max", gw.grid_a().max}, {"points", gw.grid_a().points}};
  j["grid_b"] = {{"min", gw.grid_b().min}, {"max", gw.grid_b().max}, {"points", gw.grid_b().points}};
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < gw.grid_a().points; ++i) {
    for (int k = 0; k < gw.grid_b().points; ++k) {
      arr.push_back({gw.amplitudes()(i, k).real(), gw.amplitudes()(i, k).imag()});
    }
  }
  j["amplitudes"] = std::move(arr);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << j.dump(2) << '\n';
}

}  // namespace coboson::io
