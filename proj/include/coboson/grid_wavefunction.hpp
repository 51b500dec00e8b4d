#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coboson/schmidt_spectrum.hpp"

namespace coboson {

struct Grid1D {
  double min = 0.0;
  double max = 0.0;
  int points = 0;

  Grid1D() = default;
  Grid1D(double min, double max, int points) : min(min), max(max), points(points) {
    if (!(max > min) || points < 2) {
      throw std::invalid_argument("Grid1D: need max > min and at least 2 points");
    }
  }

  double spacing() const { return (max - min) / (points - 1); }
  double span() const { return max - min; }
  double point(int i) const { return min + spacing() * i; }
};

// Two-particle amplitude Psi(x_a, x_b) sampled on a product grid, normalized
// so that sum |Psi|^2 h_a h_b = 1. Rows index the A coordinate.
class GridWavefunction {
 public:
  // Accepts amplitudes that already claim unit norm: drift beyond 1e-6 is an
  // input error, smaller drift is silently renormalized.
  static GridWavefunction from_samples(Eigen::MatrixXcd amplitudes, Grid1D grid_a,
                                       Grid1D grid_b) {
    const double norm_sq = check_shape_and_norm(amplitudes, grid_a, grid_b);
    if (std::abs(norm_sq - 1.0) > 1e-6) {
      throw std::invalid_argument(
          "GridWavefunction: declared norm^2 deviates from 1 by " +
          std::to_string(std::abs(norm_sq - 1.0)) + " (limit 1e-6)");
    }
    amplitudes /= std::sqrt(norm_sq);
    return GridWavefunction(std::move(amplitudes), grid_a, grid_b);
  }

  // Normalizes arbitrary nonzero samples; used by the builders below.
  static GridWavefunction normalized(Eigen::MatrixXcd amplitudes, Grid1D grid_a,
                                     Grid1D grid_b) {
    const double norm_sq = check_shape_and_norm(amplitudes, grid_a, grid_b);
    if (norm_sq <= 0.0) {
      throw std::invalid_argument("GridWavefunction: amplitudes are identically zero");
    }
    amplitudes /= std::sqrt(norm_sq);
    return GridWavefunction(std::move(amplitudes), grid_a, grid_b);
  }

  const Eigen::MatrixXcd& amplitudes() const { return amplitudes_; }
  const Grid1D& grid_a() const { return grid_a_; }
  const Grid1D& grid_b() const { return grid_b_; }

 private:
  GridWavefunction(Eigen::MatrixXcd amplitudes, Grid1D grid_a, Grid1D grid_b)
      : amplitudes_(std::move(amplitudes)), grid_a_(grid_a), grid_b_(grid_b) {}

  static double check_shape_and_norm(const Eigen::MatrixXcd& amplitudes,
                                     const Grid1D& grid_a, const Grid1D& grid_b) {
    if (amplitudes.rows() != grid_a.points || amplitudes.cols() != grid_b.points) {
      throw std::invalid_argument("GridWavefunction: amplitude shape does not match grids");
    }
    if (!amplitudes.allFinite()) {
      throw std::invalid_argument("GridWavefunction: non-finite amplitude");
    }
    return amplitudes.squaredNorm() * grid_a.spacing() * grid_b.spacing();
  }

  Eigen::MatrixXcd amplitudes_;
  Grid1D grid_a_;
  Grid1D grid_b_;
};

// Schmidt coefficients of the discretized state: singular values s_p of the
// amplitude matrix scaled by sqrt(h_a h_b) give lambda_p = s_p^2 / sum s_q^2.
inline SchmidtSpectrum schmidt_from_grid(const GridWavefunction& gw,
                                         double zero_threshold = default_zero_threshold) {
  const double scale = std::sqrt(gw.grid_a().spacing() * gw.grid_b().spacing());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(gw.amplitudes() * scale);
  const Eigen::VectorXd& singular = svd.singularValues();
  double total = 0.0;
  std::vector<double> lambdas(static_cast<std::size_t>(singular.size()));
  for (Eigen::Index i = 0; i < singular.size(); ++i) {
    lambdas[static_cast<std::size_t>(i)] = singular(i) * singular(i);
    total += lambdas[static_cast<std::size_t>(i)];
  }
  if (total <= 0.0) {
    throw std::invalid_argument("schmidt_from_grid: wavefunction is not normalizable");
  }
  return SchmidtSpectrum::from_raw(std::move(lambdas), zero_threshold);
}

// Psi(R, r) = psi(R) phi(r - R): a Gaussian center orbital of width b times a
// caller-supplied relative profile whose characteristic scale must be
// resolved by at least 8 grid points.
inline GridWavefunction build_trapped_pair(
    double center_width, const std::function<std::complex<double>(double)>& profile,
    double profile_scale, const Grid1D& grid_center, const Grid1D& grid_partner) {
  if (!(center_width > 0.0) || !(profile_scale > 0.0)) {
    throw std::invalid_argument("build_trapped_pair: widths must be > 0");
  }
  if (grid_center.span() < 6.0 * center_width) {
    throw std::invalid_argument(
        "build_trapped_pair: center grid spans " + std::to_string(grid_center.span()) +
        ", need at least 6 b = " + std::to_string(6.0 * center_width));
  }
  const double h = std::max(grid_center.spacing(), grid_partner.spacing());
  if (h > profile_scale / 8.0) {
    throw std::invalid_argument(
        "build_trapped_pair: grid spacing " + std::to_string(h) +
        " under-resolves the relative profile, need <= " +
        std::to_string(profile_scale / 8.0));
  }
  const double norm = std::pow(std::numbers::pi, -0.25) / std::sqrt(center_width);
  Eigen::MatrixXcd amp(grid_center.points, grid_partner.points);
  for (int i = 0; i < grid_center.points; ++i) {
    const double r_center = grid_center.point(i);
    const double psi = norm * std::exp(-r_center * r_center / (2.0 * center_width * center_width));
    for (int j = 0; j < grid_partner.points; ++j) {
      amp(i, j) = psi * profile(grid_partner.point(j) - r_center);
    }
  }
  return GridWavefunction::normalized(std::move(amp), grid_center, grid_partner);
}

// Separable state f_a(x) f_b(y); its Schmidt spectrum is a single mode.
inline GridWavefunction product_state(const std::function<std::complex<double>(double)>& f_a,
                                      const std::function<std::complex<double>(double)>& f_b,
                                      const Grid1D& grid_a, const Grid1D& grid_b) {
  Eigen::MatrixXcd amp(grid_a.points, grid_b.points);
  for (int i = 0; i < grid_a.points; ++i) {
    const std::complex<double> va = f_a(grid_a.point(i));
    for (int j = 0; j < grid_b.points; ++j) {
      amp(i, j) = va * f_b(grid_b.point(j));
    }
  }
  return GridWavefunction::normalized(std::move(amp), grid_a, grid_b);
}

// Correlated Gaussian exp(-(x+y)^2/4 s_plus^2 - (x-y)^2/4 s_minus^2); its
// Schmidt spectrum is geometric with purity 2 s+ s- / (s+^2 + s-^2).
inline GridWavefunction double_gaussian(double sigma_plus, double sigma_minus,
                                        const Grid1D& grid_a, const Grid1D& grid_b) {
  if (!(sigma_plus > 0.0) || !(sigma_minus > 0.0)) {
    throw std::invalid_argument("double_gaussian: widths must be > 0");
  }
  Eigen::MatrixXcd amp(grid_a.points, grid_b.points);
  for (int i = 0; i < grid_a.points; ++i) {
    const double x = grid_a.point(i);
    for (int j = 0; j < grid_b.points; ++j) {
      const double y = grid_b.point(j);
      const double plus = (x + y) * (x + y) / (4.0 * sigma_plus * sigma_plus);
      const double minus = (x - y) * (x - y) / (4.0 * sigma_minus * sigma_minus);
      amp(i, j) = std::exp(-plus - minus);
    }
  }
  return GridWavefunction::normalized(std::move(amp), grid_a, grid_b);
}

inline double double_gaussian_purity(double sigma_plus, double sigma_minus) {
  return 2.0 * sigma_plus * sigma_minus / (sigma_plus * sigma_plus + sigma_minus * sigma_minus);
}

}  // namespace coboson
