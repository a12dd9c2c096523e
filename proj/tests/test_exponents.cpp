#include "doctest.h"
#include "nullwave/exponents.hpp"

#include <cmath>
#include <stdexcept>

using namespace nullwave;

TEST_CASE("exponent algebra") {
  // closed form with delta = r - 1
  auto upper = [](double r) { return 2.0 * r / (2.0 - r) - 2.0 * r; };
  for (double r : {1.1, 1.25, 1.5, 1.75, 1.9}) {
    CHECK(epsilon_upper_bound(r) == doctest::Approx(upper(r)).epsilon(1e-14));
    const auto t = exponent_feasibility(r);
    CHECK(t.young_residual <= 1e-14);
    CHECK(t.holder_residual <= 1e-14);
    CHECK(t.feasible());
    CHECK(t.eps > t.eps_lower);
    CHECK(t.eps < t.eps_upper);
    // at the upper end of the interval m reaches 2
    CHECK(1.0 / (1.0 / r - 1.0 / (2.0 * r + upper(r))) == doctest::Approx(2.0));
  }
  const auto t = exponent_feasibility(1.5);
  CHECK(t.eps_lower == 0.0);
  CHECK(t.eps_upper == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(std::isinf(exponent_feasibility(2.0).eps_upper));
  CHECK(exponent_feasibility(2.0).feasible());
  CHECK_THROWS_AS(exponent_feasibility(1.0), std::invalid_argument);
  CHECK_THROWS_AS(exponent_feasibility(2.1), std::invalid_argument);
}
