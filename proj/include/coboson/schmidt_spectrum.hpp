#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace coboson {

inline constexpr double default_zero_threshold = 1e-14;

namespace detail {
// Kahan-compensated sum: keeps the unit-sum and purity invariants at the
// 1e-15 level even for spectra with thousands of modes.
inline double compensated_sum(const std::vector<double>& values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}
}  // namespace detail

// Validated Schmidt coefficients of a bipartite pure state: non-negative,
// sorted descending, normalized to unit sum. The zero threshold separates
// genuine modes from SVD noise; coefficients at or below it are kept in the
// vector but do not count as modes.
class SchmidtSpectrum {
 public:
  // Clamps tiny negatives (>= -1e-12), sorts descending, rescales to unit sum.
  static SchmidtSpectrum from_raw(std::vector<double> values,
                                  double zero_threshold = default_zero_threshold) {
    if (values.empty()) {
      throw std::invalid_argument("SchmidtSpectrum: empty coefficient list");
    }
    if (!(zero_threshold >= 0.0)) {
      throw std::invalid_argument("SchmidtSpectrum: zero_threshold must be >= 0");
    }
    for (double& v : values) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("SchmidtSpectrum: non-finite coefficient");
      }
      if (v < -negative_clamp_tolerance) {
        throw std::invalid_argument("SchmidtSpectrum: negative coefficient beyond clamp tolerance");
      }
      if (v < 0.0) v = 0.0;
    }
    const double sum = detail::compensated_sum(values);
    if (sum <= 0.0) {
      throw std::invalid_argument("SchmidtSpectrum: coefficients sum to zero");
    }
    std::sort(values.begin(), values.end(), std::greater<double>());
    for (double& v : values) v /= sum;
    return SchmidtSpectrum(std::move(values), zero_threshold);
  }

  // All modes equal, lambda_p = 1/M.
  static SchmidtSpectrum uniform(int mode_count,
                                 double zero_threshold = default_zero_threshold) {
    if (mode_count < 1) {
      throw std::invalid_argument("SchmidtSpectrum::uniform: mode count must be >= 1");
    }
    return from_raw(std::vector<double>(static_cast<std::size_t>(mode_count), 1.0),
                    zero_threshold);
  }

  // lambda_p proportional to (1-z) z^p, truncated once the cumulative mass
  // reaches 1 - tail_cutoff, then renormalized.
  static SchmidtSpectrum geometric(double z, double tail_cutoff = 1e-12,
                                   double zero_threshold = default_zero_threshold) {
    if (!(z >= 0.0 && z < 1.0)) {
      throw std::invalid_argument("SchmidtSpectrum::geometric: z must be in [0, 1)");
    }
    if (!(tail_cutoff > 0.0 && tail_cutoff < 1.0)) {
      throw std::invalid_argument("SchmidtSpectrum::geometric: tail_cutoff must be in (0, 1)");
    }
    std::size_t count = 1;
    if (z > 0.0) {
      // Smallest K with z^K <= tail_cutoff.
      double k = std::ceil(std::log(tail_cutoff) / std::log(z));
      count = static_cast<std::size_t>(std::max(1.0, k));
    }
    std::vector<double> values(count);
    double term = 1.0 - z;
    for (std::size_t p = 0; p < count; ++p) {
      values[p] = term;
      term *= z;
    }
    return from_raw(std::move(values), zero_threshold);
  }

  // Reproducible Dirichlet(concentration) draw, for property tests and sweeps.
  static SchmidtSpectrum random_dirichlet(int mode_count, double concentration,
                                          std::uint64_t seed,
                                          double zero_threshold = default_zero_threshold) {
    if (mode_count < 1) {
      throw std::invalid_argument("SchmidtSpectrum::random_dirichlet: mode count must be >= 1");
    }
    if (!(concentration > 0.0)) {
      throw std::invalid_argument("SchmidtSpectrum::random_dirichlet: concentration must be > 0");
    }
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> gamma(concentration, 1.0);
    std::vector<double> values(static_cast<std::size_t>(mode_count));
    double sum = 0.0;
    do {
      sum = 0.0;
      for (double& v : values) {
        v = gamma(rng);
        sum += v;
      }
    } while (!(sum > 0.0));
    return from_raw(std::move(values), zero_threshold);
  }

  const std::vector<double>& lambdas() const { return lambdas_; }
  double zero_threshold() const { return zero_threshold_; }

  // Number of modes above the zero threshold (the sort makes them a prefix).
  int mode_count() const { return mode_count_; }

  std::span<const double> effective_lambdas() const {
    return std::span<const double>(lambdas_.data(), static_cast<std::size_t>(mode_count_));
  }

  static constexpr double negative_clamp_tolerance = 1e-12;

 private:
  SchmidtSpectrum(std::vector<double> lambdas, double zero_threshold)
      : lambdas_(std::move(lambdas)), zero_threshold_(zero_threshold) {
    mode_count_ = 0;
    for (double v : lambdas_) {
      if (v > zero_threshold_) ++mode_count_;
    }
    if (mode_count_ == 0) {
      throw std::invalid_argument("SchmidtSpectrum: no mode above the zero threshold");
    }
  }

  std::vector<double> lambdas_;
  double zero_threshold_;
  int mode_count_;
};

// P = sum of squared Schmidt coefficients; 1/M for maximal entanglement over
// M modes, 1 for a product state.
inline double purity(const SchmidtSpectrum& spectrum) {
  double p = 0.0;
  double carry = 0.0;
  for (double v : spectrum.lambdas()) {
    const double y = v * v - carry;
    const double t = p + y;
    carry = (t - p) - y;
    p = t;
  }
  return p;
}

}  // namespace coboson
