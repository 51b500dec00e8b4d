#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "coboson/quadrature.hpp"

using Catch::Matchers::WithinAbs;
using coboson::quad::integrate;

TEST_CASE("adaptive simpson reproduces textbook integrals") {
  const auto poly = integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0, 1e-12);
  REQUIRE_THAT(poly.value, WithinAbs(16.0, 1e-10));

  const auto cosine = integrate([](double x) { return std::cos(x); }, 0.0,
                                std::numbers::pi / 2.0, 1e-12);
  REQUIRE_THAT(cosine.value, WithinAbs(1.0, 1e-11));

  // Sharp Gaussian inside a wide window exercises the adaptive splitting.
  const auto gauss = integrate([](double x) { return std::exp(-50.0 * x * x); }, -40.0,
                               40.0, 1e-12);
  REQUIRE_THAT(gauss.value, WithinAbs(std::sqrt(std::numbers::pi / 50.0), 1e-10));
}

TEST_CASE("error estimate is reported and honest") {
  const auto r = integrate([](double x) { return std::exp(-x) * x * x; }, 0.0, 60.0, 1e-11);
  REQUIRE_THAT(r.value, WithinAbs(2.0, 1e-9));
  REQUIRE(r.error_estimate <= 4e-11);
}

TEST_CASE("non-convergence raises with the achieved estimate") {
  // Depth 2 cannot resolve a narrow spike to 1e-12.
  REQUIRE_THROWS_AS(integrate([](double x) { return std::exp(-1e6 * x * x); }, -300.0,
                              300.0, 1e-12, 2),
                    coboson::quad::ConvergenceError);
  REQUIRE_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, 0.0),
                    std::invalid_argument);
}
