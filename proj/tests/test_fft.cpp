#include "doctest.h"
#include "nullwave/fft.hpp"
#include "support.hpp"

using namespace nullwave;

namespace {

// Direct sums with the continuum normalisation and the physical time t_j.
cplx naive_spatial(const PhysicalField& f, int k1, int k2) {
  const auto& g = f.grid;
  cplx acc = 0.0;
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) acc += f(a, b) * std::polar(1.0, -(g.xi(k1) * g.x(a) + g.xi(k2) * g.x(b)));
  return acc * g.dx() * g.dx() / (2.0 * pi);
}

cplx naive_spacetime(const PhysicalField& f, int m, int k1, int k2) {
  const auto& g = f.grid;
  cplx acc = 0.0;
  for (int j = 0; j < g.n_time; ++j)
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        acc += f(j, a, b) * std::polar(1.0, -(g.tau(m) * g.t(j) + g.xi(k1) * g.x(a) + g.xi(k2) * g.x(b)));
  return acc * g.dt() * g.dx() * g.dx() / std::pow(2.0 * pi, 1.5);
}

}  // namespace

TEST_CASE("spatial transform equals the direct sum") {
  const auto g = make_grid(3.0, 8, 1.0, 4);
  const auto f = testing::random_field<PhysicalField>(g, Extent::spatial, 1);
  const auto s = transform(f);
  for (int k1 = 0; k1 < g.n; ++k1)
    for (int k2 = 0; k2 < g.n; ++k2) CHECK(std::abs(s(k1, k2) - naive_spatial(f, k1, k2)) < 1e-13);
}

TEST_CASE("space-time transform equals the direct sum with the physical time origin") {
  const auto g = make_grid(2.0 * pi, 4, 1.5, 8);
  const auto f = testing::random_field<PhysicalField>(g, Extent::spacetime, 2);
  const auto s = transform(f);
  for (int m = 0; m < g.n_time; ++m)
    for (int k1 = 0; k1 < g.n; ++k1)
      for (int k2 = 0; k2 < g.n; ++k2) CHECK(std::abs(s(m, k1, k2) - naive_spacetime(f, m, k1, k2)) < 1e-13);
}

TEST_CASE("inverse transform round trips and preserves the L2 norm") {
  for (auto e : {Extent::spatial, Extent::spacetime}) {
    const auto g = make_grid(5.0, 16, 2.0, 16);
    const auto f = testing::random_field<PhysicalField>(g, e, 3);
    const auto s = transform(f);
    const auto back = inverse_transform(s);
    CHECK(testing::rel_diff(back.values, f.values) < 1e-14);
    double p = 0.0, q = 0.0;
    for (const auto& v : f.values) p += std::norm(v);
    for (const auto& v : s.values) q += std::norm(v);
    const double wp = e == Extent::spatial ? g.dx() * g.dx() : g.dt() * g.dx() * g.dx();
    const double wq = e == Extent::spatial ? g.dxi() * g.dxi() : g.dtau() * g.dxi() * g.dxi();
    CHECK(std::abs(p * wp - q * wq) < 1e-12 * p * wp);
  }
}

TEST_CASE("dealias keeps exactly the modes with 3|k| < n") {
  const auto g = make_grid(2.0 * pi, 16, 1.0, 8);
  auto s = testing::random_field<SpectralField>(g, Extent::spacetime, 4);
  const auto before = s;
  dealias(s);
  for (int m = 0; m < g.n_time; ++m)
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        const bool keep = 3 * std::abs(SpacetimeGrid::wavenumber(m, g.n_time)) < g.n_time &&
                          3 * std::abs(SpacetimeGrid::wavenumber(a, g.n)) < g.n &&
                          3 * std::abs(SpacetimeGrid::wavenumber(b, g.n)) < g.n;
        CHECK(s(m, a, b) == (keep ? before(m, a, b) : cplx(0.0)));
      }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(1.0, 12, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(-1.0, 8, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1.0, 8, 1.0, 6), std::invalid_argument);
  const auto g = make_grid(2.0, 8, 1.0, 8);
  CHECK(g.xi(3) == doctest::Approx(3.0 * pi));
  CHECK(g.xi(5) == doctest::Approx(-3.0 * pi));
  CHECK(g.negate(3) == 5);
}

TEST_CASE("bracket switch") {
  CHECK(bracket(3.0) == 4.0);
  set_bracket_kind(BracketKind::japanese);
  CHECK(bracket(3.0) == doctest::Approx(std::sqrt(10.0)));
  set_bracket_kind(BracketKind::linear);
}
