#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "coboson/grid_wavefunction.hpp"
#include "coboson/quadrature.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace coboson;

namespace {

std::complex<double> gaussian(double x, double width) {
  return std::exp(-x * x / (2.0 * width * width));
}

// 1-D short-range purity oracle: P ~= int |psi|^4 dR * int sigma_phi(q)^2 dq,
// with sigma_phi the displacement self-overlap of the relative profile.
// Valid when the profile is much narrower than the trap orbital.
double short_range_purity_1d(double center_width, double profile_width) {
  const double b = center_width;
  auto psi4 = [&](double r) {
    const double amp = std::exp(-r * r / (b * b)) / (std::sqrt(std::numbers::pi) * b);
    return amp * amp;
  };
  const double quartic = quad::integrate(psi4, -8.0 * b, 8.0 * b, 1e-13).value;

  const double w = profile_width;
  auto sigma = [&](double q) {
    auto prod = [&](double r) {
      return (gaussian(r, w) * gaussian(r - q, w)).real() /
             (std::sqrt(std::numbers::pi) * w);
    };
    return quad::integrate(prod, -10.0 * w + q / 2.0, 10.0 * w + q / 2.0, 1e-13).value;
  };
  auto sigma_sq = [&](double q) {
    const double s = sigma(q);
    return s * s;
  };
  const double overlap = quad::integrate(sigma_sq, -10.0 * w, 10.0 * w, 1e-11).value;
  return quartic * overlap;
}

}  // namespace

TEST_CASE("grid validation") {
  REQUIRE_THROWS_AS(Grid1D(1.0, 1.0, 16), std::invalid_argument);
  REQUIRE_THROWS_AS(Grid1D(0.0, 1.0, 1), std::invalid_argument);
  const Grid1D g(-2.0, 2.0, 5);
  REQUIRE(g.spacing() == 1.0);
  REQUIRE(g.point(3) == 1.0);
}

TEST_CASE("product state has a single Schmidt mode") {
  const Grid1D grid(-8.0, 8.0, 128);
  const auto gw = product_state([](double x) { return gaussian(x, 1.0); },
                                [](double y) { return gaussian(y, 0.5); }, grid, grid);
  const auto spectrum = schmidt_from_grid(gw);
  REQUIRE_THAT(purity(spectrum), WithinAbs(1.0, 1e-10));
  REQUIRE(spectrum.mode_count() >= 1);
}

TEST_CASE("double gaussian with equal widths is separable") {
  const Grid1D grid(-6.0, 6.0, 128);
  const auto gw = double_gaussian(1.0, 1.0, grid, grid);
  REQUIRE_THAT(purity(schmidt_from_grid(gw)), WithinAbs(1.0, 1e-8));
}

TEST_CASE("asymmetric double gaussian reproduces the closed-form purity") {
  REQUIRE_THAT(double_gaussian_purity(10.0, 1.0), WithinRel(20.0 / 101.0, 1e-15));

  const Grid1D grid(-6.0, 6.0, 256);
  const auto gw = double_gaussian(1.0, 1.0 / 3.0, grid, grid);
  REQUIRE_THAT(purity(schmidt_from_grid(gw)),
               WithinAbs(double_gaussian_purity(1.0, 1.0 / 3.0), 1e-6));
}

TEST_CASE("grid refinement converges at least second order") {
  auto purity_at = [](int points) {
    const Grid1D grid(-5.0, 5.0, points);
    return purity(schmidt_from_grid(double_gaussian(1.0, 0.5, grid, grid)));
  };
  const double p1 = purity_at(64);
  const double p2 = purity_at(128);
  const double p3 = purity_at(256);
  const double delta1 = std::abs(p1 - p2);
  const double delta2 = std::abs(p2 - p3);
  REQUIRE(delta2 <= std::max(delta1 / 3.0, 1e-11));
}

TEST_CASE("trapped pair: narrow profiles entangle, wide profiles separate") {
  const double b = 1.0;
  auto build = [&](double w, int points_scale) {
    const Grid1D center(-3.5 * b, 3.5 * b, points_scale);
    const Grid1D partner(-3.8 * b, 3.8 * b, points_scale + 32);
    return build_trapped_pair(
        b, [w](double r) { return gaussian(r, w); }, w, center, partner);
  };

  const double p_fifth = purity(schmidt_from_grid(build(b / 5.0, 360)));
  const double p_tenth = purity(schmidt_from_grid(build(b / 10.0, 640)));

  // Narrower relative profile means stronger entanglement.
  REQUIRE(p_tenth < p_fifth);
  REQUIRE_THAT(p_fifth, WithinRel(short_range_purity_1d(b, b / 5.0), 0.05));
  REQUIRE_THAT(p_tenth, WithinRel(short_range_purity_1d(b, b / 10.0), 0.02));

  // Equal widths: still a valid state, purity strictly inside (0, 1].
  const auto equal = build(b, 128);
  const double p_equal = purity(schmidt_from_grid(equal));
  REQUIRE(p_equal > 0.0);
  REQUIRE(p_equal <= 1.0);

  // A very wide profile is constant across the trap: near-product state.
  const Grid1D center(-3.0 * b, 3.0 * b, 96);
  const auto wide = build_trapped_pair(
      b, [&](double r) { return gaussian(r, 50.0 * b); }, 50.0 * b, center, center);
  REQUIRE(purity(schmidt_from_grid(wide)) > 0.999);
}

TEST_CASE("trapped pair rejects bad grids") {
  const double b = 1.0;
  auto profile = [](double r) { return gaussian(r, 0.1); };

  // Span below 6 b.
  REQUIRE_THROWS_AS(build_trapped_pair(b, profile, 0.1, Grid1D(-2.0, 2.0, 512),
                                       Grid1D(-4.0, 4.0, 512)),
                    std::invalid_argument);
  // Spacing above profile_scale/8.
  REQUIRE_THROWS_AS(build_trapped_pair(b, profile, 0.1, Grid1D(-4.0, 4.0, 64),
                                       Grid1D(-4.0, 4.0, 64)),
                    std::invalid_argument);
}

TEST_CASE("from_samples enforces the declared norm") {
  const Grid1D grid(0.0, 1.0, 11);
  Eigen::MatrixXcd flat = Eigen::MatrixXcd::Constant(11, 11, 1.0);
  REQUIRE_THROWS_AS(GridWavefunction::from_samples(flat, grid, grid),
                    std::invalid_argument);

  // Unit-norm samples with drift below 1e-6 are accepted and renormalized.
  Eigen::MatrixXcd ok = flat / std::sqrt(flat.squaredNorm() * grid.spacing() * grid.spacing());
  ok *= 1.0 + 2e-7;
  const auto gw = GridWavefunction::from_samples(ok, grid, grid);
  REQUIRE_THAT(gw.amplitudes().squaredNorm() * grid.spacing() * grid.spacing(),
               WithinAbs(1.0, 1e-12));

  REQUIRE_THROWS_AS(
      GridWavefunction::normalized(Eigen::MatrixXcd::Zero(11, 11), grid, grid),
      std::invalid_argument);
}
