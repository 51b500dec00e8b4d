// Builds a 1-D trapped pair (Gaussian center orbital, narrow Gaussian
// relative profile), extracts its Schmidt spectrum, and prints how bosonic
// the composite looks as pairs are stacked into the same state.

#include <cmath>
#include <complex>
#include <cstdio>

#include "coboson/chi.hpp"
#include "coboson/grid_wavefunction.hpp"

int main() {
  const double trap_width = 1.0;
  const double profile_width = 0.1;

  const coboson::Grid1D center(-4.0, 4.0, 700);
  const coboson::Grid1D partner(-4.2, 4.2, 740);
  const auto pair = coboson::build_trapped_pair(
      trap_width,
      [profile_width](double r) {
        return std::complex<double>(std::exp(-r * r / (2.0 * profile_width * profile_width)));
      },
      profile_width, center, partner);

  const auto spectrum = coboson::schmidt_from_grid(pair);
  const double p = coboson::purity(spectrum);
  std::printf("modes: %d   purity: %.6f   (1/P ~ %.0f pairs fit before degrading)\n",
              spectrum.mode_count(), p, 1.0 / p);

  const auto table = coboson::chi_table(spectrum, 12);
  std::printf("%4s %12s %12s %12s\n", "N", "ratio", "1-NP", "1-P");
  for (int n = 1; n <= 10; ++n) {
    std::printf("%4d %12.8f %12.8f %12.8f\n", n, coboson::chi_ratio(table, n),
                1.0 - n * p, 1.0 - p);
  }
  return 0;
}
