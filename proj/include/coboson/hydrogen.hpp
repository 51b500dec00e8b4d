#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "coboson/quadrature.hpp"

namespace coboson {

// Ground-state atom in a harmonic trap: a Gaussian center-of-mass orbital of
// width b carrying a 1s internal orbital of Bohr radius a0. Lengths are kept
// in units of a0 internally; only the ratio b/a0 enters any observable.
struct HydrogenTrapModel {
  double bohr_radius = 1.0;
  double trap_width = 10.0;

  HydrogenTrapModel(double a0, double b) : bohr_radius(a0), trap_width(b) {
    if (!(a0 > 0.0) || !(b > 0.0)) {
      throw std::invalid_argument("HydrogenTrapModel: a0 and b must be > 0");
    }
  }

  static HydrogenTrapModel from_ratio(double b_over_a0) {
    return HydrogenTrapModel(1.0, b_over_a0);
  }

  double size_ratio() const { return trap_width / bohr_radius; }

  // The closed-form purity assumes the internal orbital is much smaller than
  // the trap; below b/a0 = 10 its error stops being negligible.
  bool in_validity_regime() const { return size_ratio() >= 10.0; }
};

// Self-overlap of the 1s orbital displaced by q: with u = q/a0,
//   sigma(q) = exp(-u) (1 + u + u^2/3).
// The test suite gates this closed form against direct numerical integration
// of the 3-D overlap integral before it is trusted anywhere else.
inline double sigma_overlap(const HydrogenTrapModel& model, double q) {
  if (q < 0.0) {
    throw std::invalid_argument("sigma_overlap: displacement must be >= 0");
  }
  const double u = q / model.bohr_radius;
  return std::exp(-u) * (1.0 + u + u * u / 3.0);
}

// Trap-orbital quartic integral: int |psi(R)|^4 d^3R = 1/((2 pi)^{3/2} b^3).
inline double trap_quartic_integral(const HydrogenTrapModel& model) {
  const double b = model.trap_width;
  return 1.0 / (std::pow(2.0 * std::numbers::pi, 1.5) * b * b * b);
}

// int |sigma(q)|^2 d^3q = 4 pi int_0^inf sigma(q)^2 q^2 dq, by adaptive
// radial quadrature. In units of a0^3 this equals 33 pi / 2.
inline quad::Result sigma_squared_volume_integral(const HydrogenTrapModel& model,
                                                  double abs_tol = 1e-9) {
  const double a0 = model.bohr_radius;
  auto integrand = [&](double q) {
    const double s = sigma_overlap(model, q);
    return s * s * q * q;
  };
  // sigma^2 decays like exp(-2q/a0); beyond 90 a0 the tail is below 1e-70.
  quad::Result r = quad::integrate(integrand, 0.0, 90.0 * a0, abs_tol);
  r.value *= 4.0 * std::numbers::pi;
  r.error_estimate *= 4.0 * std::numbers::pi;
  return r;
}

// Purity of either constituent, short-range form: the product of the trap
// quartic integral and the sigma^2 volume integral.
inline double hydrogen_purity_quadrature(const HydrogenTrapModel& model) {
  if (model.size_ratio() < 1.0) {
    throw std::invalid_argument("hydrogen_purity_quadrature: requires b >= a0");
  }
  const double a0 = model.bohr_radius;
  const quad::Result sigma_sq = sigma_squared_volume_integral(model, 1e-10 * 52.0 * a0 * a0 * a0);
  return trap_quartic_integral(model) * sigma_sq.value;
}

// Closed form of the same product: P = 33/(4 sqrt(2 pi)) (a0/b)^3. Exceeds 1
// for b close to a0, where the short-range approximation has broken down.
inline double hydrogen_purity_closed(const HydrogenTrapModel& model) {
  const double x = model.bohr_radius / model.trap_width;
  return 33.0 / (4.0 * std::sqrt(2.0 * std::numbers::pi)) * x * x * x;
}

// Number of atoms the trap supports before N P exceeds delta, i.e. before the
// purity lower bound on the chi ratio degrades past 1 - delta.
inline int max_atoms(const HydrogenTrapModel& model, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("max_atoms: delta must be in (0, 1)");
  }
  const double p = hydrogen_purity_closed(model);
  if (p >= 1.0) {
    throw std::domain_error("max_atoms: computed purity " + std::to_string(p) +
                            " >= 1, the closed form is outside its validity regime");
  }
  int n = static_cast<int>(std::floor(delta / p));
  if (static_cast<double>(n + 1) * p <= delta * (1.0 + 1e-12)) {
    ++n;
  }
  return n;
}

}  // namespace coboson
