#include "doctest.h"
#include "nullwave/fft.hpp"
#include "nullwave/foliation.hpp"
#include "support.hpp"

using namespace nullwave;

TEST_CASE("foliation round trip") {
  const auto g = make_grid(2.0 * pi, 16, 3.0, 32);
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto u = transform(testing::random_field<PhysicalField>(g, Extent::spacetime, seed));
    for (double b : {0.6, 0.9}) {
      const auto data = foliation_decompose(u, b);
      CHECK(testing::rel_diff(foliation_reconstruct(data).values, u.values) <= 1e-10);
    }
  }
}

TEST_CASE("foliation norm equals the X norm of each half") {
  const auto g = make_grid(2.0 * pi, 16, 3.0, 32);
  for (unsigned seed = 10; seed < 15; ++seed) {
    const auto u = transform(testing::random_field<PhysicalField>(g, Extent::spacetime, seed));
    const auto [up, um] = split_half_spaces(u);
    for (double r : {1.25, 2.0}) {
      const NormSpec spec{1.2, 0.8, r};
      const auto data = foliation_decompose(u, spec.b);
      CHECK(foliation_norm(data, +1, spec) == doctest::Approx(xsb_norm(up, spec)).epsilon(1e-6));
      CHECK(foliation_norm(data, -1, spec) == doctest::Approx(xsb_norm(um, spec)).epsilon(1e-6));
    }
  }
}

TEST_CASE("half spaces partition the spectrum") {
  const auto g = make_grid(2.0 * pi, 8, 2.0, 16);
  const auto u = testing::random_field<SpectralField>(g, Extent::spacetime, 4);
  const auto [up, um] = split_half_spaces(u);
  CHECK(testing::rel_diff((up + um).values, u.values) == 0.0);
  for (int j = 0; j < g.n_time; ++j) {
    const auto& zero = g.tau(j) >= 0.0 ? um : up;
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) CHECK(zero(j, a, b) == cplx(0.0));
  }
}

TEST_CASE("cone-family time slices resynthesise the field") {
  const auto g = make_grid(2.0 * pi, 8, 3.0, 32);
  const auto p = testing::random_field<PhysicalField>(g, Extent::spacetime, 6);
  const auto u = transform(p);
  const auto data = foliation_decompose(u, 0.7);
  for (int j : {0, 7, 16, 25}) {
    const auto s = foliation_time_slice(data, +1, g.t(j)) + foliation_time_slice(data, -1, g.t(j));
    CHECK(testing::rel_diff(s.values, transform(time_slice(p, j)).values) < 1e-12);
  }
}

TEST_CASE("support of the cone families") {
  // f_+(rho)(xi) comes from tau = rho + |xi| >= 0, so it vanishes for |xi| < -rho
  // up to the half-lattice rounding of the shift
  const auto g = make_grid(2.0 * pi, 8, 4.0, 64);
  const auto data = foliation_decompose(testing::random_field<SpectralField>(g, Extent::spacetime, 2), 0.6);
  CHECK(foliation_support_violation(data, g.dtau()) == 0.0);
  CHECK(foliation_support_violation(data, -2.0 * g.dtau()) > 0.0);
}
