#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace coboson::quad {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(double value, double achieved, double requested)
      : std::runtime_error("quadrature did not converge: achieved error estimate " +
                           std::to_string(achieved) + " > requested " +
                           std::to_string(requested) + " (value " +
                           std::to_string(value) + ")"),
        value(value),
        achieved_error(achieved) {}

  double value;
  double achieved_error;
};

namespace detail {

template <typename F>
Result simpson_recurse(const F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth, int forced) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (forced <= 0 && (depth <= 0 || std::abs(delta) <= 15.0 * tol)) {
    // Richardson extrapolation; the leftover delta/15 is the error estimate.
    return {left + right + delta / 15.0, std::abs(delta) / 15.0};
  }
  if (depth <= 0) return {left + right + delta / 15.0, std::abs(delta) / 15.0};
  const Result rl =
      simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, forced - 1);
  const Result rr =
      simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, forced - 1);
  return {rl.value + rr.value, rl.error_estimate + rr.error_estimate};
}

}  // namespace detail

// Adaptive Simpson on [a, b] with an absolute tolerance. The interval is cut
// into equal panels first and every panel is bisected twice before the error
// estimate is trusted, so narrow features inside wide windows are not
// silently skipped. Throws ConvergenceError when the achieved error estimate
// misses the request.
template <typename F>
Result integrate(const F& f, double a, double b, double abs_tol, int max_depth = 48,
                 int initial_panels = 16) {
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("integrate: tolerance must be > 0");
  }
  if (initial_panels < 1) {
    throw std::invalid_argument("integrate: need at least one panel");
  }
  if (a == b) return {0.0, 0.0};

  const double width = (b - a) / initial_panels;
  const double panel_tol = abs_tol / initial_panels;
  Result total;
  for (int k = 0; k < initial_panels; ++k) {
    const double x0 = a + width * k;
    const double x1 = (k + 1 == initial_panels) ? b : a + width * (k + 1);
    const double xm = 0.5 * (x0 + x1);
    const double fa = f(x0);
    const double fm = f(xm);
    const double fb = f(x1);
    const double whole = (x1 - x0) / 6.0 * (fa + 4.0 * fm + fb);
    const Result r =
        detail::simpson_recurse(f, x0, x1, fa, fm, fb, whole, panel_tol, max_depth, 2);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
  }
  if (!(total.error_estimate <= abs_tol * 4.0) || !std::isfinite(total.value)) {
    throw ConvergenceError(total.value, total.error_estimate, abs_tol);
  }
  return total;
}

}  // namespace coboson::quad
