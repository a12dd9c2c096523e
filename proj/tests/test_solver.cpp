#include "doctest.h"
#include "nullwave/fft.hpp"
#include "nullwave/propagator.hpp"
#include "nullwave/solver.hpp"
#include "support.hpp"

using namespace nullwave;

namespace {

SpectralField smooth(const SpacetimeGrid& g, double amplitude, double phase) {
  PhysicalField p(g, Extent::spatial);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) p(a, b) = amplitude * std::exp(std::cos(g.x(a) + phase) + 0.5 * std::sin(g.x(b)));
  return transform(p);
}

CauchyData pair_data(const SpacetimeGrid& g, double amplitude) {
  return {{smooth(g, amplitude, 0.0), smooth(g, amplitude, 1.0)},
          {smooth(g, 0.3 * amplitude, 2.0), smooth(g, 0.3 * amplitude, 0.5)}};
}

std::vector<SpectralField> final_state(const NlwSystem& s, const CauchyData& d, double dt) {
  EvolveOptions o;
  o.t_end = 1.0;
  o.dt = dt;
  o.sample_every = static_cast<int>(std::lround(1.0 / dt));
  return evolve_nlw(s, d, o).u.back();
}

}  // namespace

TEST_CASE("linear system reproduces the exact propagator") {
  const auto g = make_grid(2.0 * pi, 32, pi, 2);
  const auto d = pair_data(g, 0.3);
  EvolveOptions o;
  o.t_end = 1.0;
  o.dt = 0.0125;
  o.sample_every = 20;
  const auto tr = evolve_nlw(NlwSystem::linear(2), d, o);
  REQUIRE(tr.times.size() == 5);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double t = tr.times[k];
    CHECK(t == doctest::Approx(0.25 * k));
    for (int c = 0; c < 2; ++c) {
      CHECK(testing::rel_diff(tr.u[k][c].values, linear_evolution(d.f[c], d.g[c], t).values) < 1e-7);
      const double e0 = wave_energy(d.f[c], d.g[c]);
      CHECK(std::abs(wave_energy(tr.u[k][c], tr.ut[k][c]) - e0) <= 1e-7 * e0);
    }
  }
}

TEST_CASE("cross-pair RK4 converges at fourth order") {
  const auto g = make_grid(2.0 * pi, 32, pi, 2);
  const auto d = pair_data(g, 0.3);
  const auto s = NlwSystem::cross_pair(NullFormKind::q12);
  const auto ref = final_state(s, d, 0.025 / 8.0);
  const double e1 = relative_l2(final_state(s, d, 0.025), ref);
  const double e2 = relative_l2(final_state(s, d, 0.0125), ref);
  CAPTURE(e1);
  CAPTURE(e2);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("residual of the discrete solution is small") {
  const auto g = make_grid(2.0 * pi, 32, pi, 2);
  EvolveOptions o;
  o.t_end = 1.0;
  o.dt = 0.0125;
  const auto s = NlwSystem::cross_pair(NullFormKind::q0);
  const auto tr = evolve_nlw(s, pair_data(g, 0.3), o);
  const auto res = nlw_residual(tr, s);
  CHECK(res.size() == tr.times.size() - 4);
  for (double r : res) CHECK(r < 1e-4);
}

TEST_CASE("diagonal Q_ij system is free") {
  // Q_12(u, u) vanishes identically
  const auto g = make_grid(2.0 * pi, 16, pi, 2);
  const auto d = pair_data(g, 0.5);
  const CauchyData one{{d.f[0]}, {d.g[0]}};
  const auto u = nlw_source(NlwSystem::diagonal(NullFormKind::q12), one.f, one.g);
  double m = 0.0;
  for (const auto& v : u[0].values) m = std::max(m, std::abs(v));
  CHECK(m < 1e-12);
}

TEST_CASE("scaling covariance of the discrete system") {
  const auto g = make_grid(2.0 * pi, 32, pi, 2);
  EvolveOptions o;
  o.t_end = 1.0;
  o.dt = 0.025;
  const auto cov = scaling_covariance(NlwSystem::cross_pair(NullFormKind::q12), pair_data(g, 0.3), o, 2.0);
  CHECK(cov.reference_norm > 0.0);
  CHECK(cov.mismatch <= 1e-5);
}

TEST_CASE("zero data stays zero and bad options throw") {
  const auto g = make_grid(2.0 * pi, 16, pi, 2);
  const SpectralField z(g, Extent::spatial);
  EvolveOptions o;
  o.dt = 0.02;
  const auto tr = evolve_nlw(NlwSystem::cross_pair(NullFormKind::q01), {{z, z}, {z, z}}, o);
  CHECK(l2_norm(tr.u.back()) == 0.0);
  o.dt = 0.1;
  CHECK_THROWS_AS(evolve_nlw(NlwSystem::linear(2), {{z, z}, {z, z}}, o), std::invalid_argument);
  o.dt = 0.03;
  CHECK_THROWS_AS(evolve_nlw(NlwSystem::linear(2), {{z, z}, {z, z}}, o), std::invalid_argument);
  o.dt = 0.02;
  CHECK_THROWS_AS(evolve_nlw(NlwSystem::linear(2), {{z}, {z}}, o), std::invalid_argument);
}

TEST_CASE("blow-up is reported as an instability") {
  const auto g = make_grid(2.0 * pi, 16, pi, 2);
  EvolveOptions o;
  o.t_end = 2.0;
  o.dt = 0.02;
  CHECK_THROWS_AS(evolve_nlw(NlwSystem::cross_pair(NullFormKind::q0), pair_data(g, 40.0), o), SolverInstability);
}

TEST_CASE("rough data has the prescribed spectrum and is real") {
  const auto g = make_grid(2.0 * pi, 32, pi, 2);
  const auto f = rough_data(g, 2.0, 0.5, 1.5, 9, 0);
  const double rp = 3.0;
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      const bool kept = 3 * std::abs(g.xi(a)) < g.n && 3 * std::abs(g.xi(b)) < g.n;
      if (!kept) {
        CHECK(f(a, b) == cplx(0.0));
        continue;
      }
      CHECK(std::abs(f(a, b)) == doctest::Approx(2.0 * std::pow(bracket(g.xi(a), g.xi(b)), -0.5 - 2.0 / rp)));
    }
  const auto p = inverse_transform(f);
  double im = 0.0;
  for (const auto& v : p.values) im = std::max(im, std::abs(v.imag()));
  CHECK(im < 1e-12);
  CHECK(rough_data(g, 2.0, 0.5, 1.5, 9, 0).values == f.values);
}
