#include "doctest.h"
#include "nullwave/fft.hpp"
#include "nullwave/propagator.hpp"
#include "support.hpp"

using namespace nullwave;

namespace {

PhysicalField plane(const SpacetimeGrid& g, int k1, int k2, bool sine) {
  PhysicalField p(g, Extent::spatial);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      const double ph = k1 * g.x(a) + k2 * g.x(b);
      p(a, b) = sine ? std::sin(ph) : std::cos(ph);
    }
  return p;
}

// RK4 on w'' + rho^2 w = e^{i tau t}, w(0) = w'(0) = 0.
cplx ode_oracle(double t_end, double tau, double rho, int steps) {
  const double h = t_end / steps;
  cplx w = 0.0, v = 0.0;
  auto acc = [&](double t, cplx x) { return std::polar(1.0, tau * t) - rho * rho * x; };
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const cplx k1w = v, k1v = acc(t, w);
    const cplx k2w = v + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, w + 0.5 * h * k1w);
    const cplx k3w = v + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, w + 0.5 * h * k2w);
    const cplx k4w = v + h * k3v, k4v = acc(t + h, w + h * k3w);
    w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return w;
}

}  // namespace

TEST_CASE("plane waves are propagated exactly") {
  const auto g = make_grid(2.0 * pi, 32, pi, 2);
  const int k1 = 3, k2 = -4;  // |k| = 5
  const auto c = plane(g, k1, k2, false), s = plane(g, k1, k2, true);
  const SpectralField zero(g, Extent::spatial);
  for (double t : {0.3, 1.7, 12.9}) {
    const auto u = inverse_transform(linear_evolution(transform(c), zero, t));
    const auto v = inverse_transform(linear_evolution(zero, transform(s), t));
    double e = 0.0;
    for (std::size_t k = 0; k < u.values.size(); ++k) {
      e = std::max(e, std::abs(u.values[k] - std::cos(5.0 * t) * c.values[k]));
      e = std::max(e, std::abs(v.values[k] - std::sin(5.0 * t) / 5.0 * s.values[k]));
    }
    CHECK(e < 1e-12);
  }
  // half waves: e^{+-it|D|} e^{ik.x}
  PhysicalField ex(g, Extent::spatial);
  for (std::size_t k = 0; k < ex.values.size(); ++k) ex.values[k] = {c.values[k].real(), s.values[k].real()};
  const auto hw = inverse_transform(half_wave(transform(ex), -1, 0.4));
  double e = 0.0;
  for (std::size_t k = 0; k < ex.values.size(); ++k)
    e = std::max(e, std::abs(hw.values[k] - std::polar(1.0, -5.0 * 0.4) * ex.values[k]));
  CHECK(e < 1e-12);
}

TEST_CASE("energy of the free evolution is conserved") {
  const auto g = make_grid(2.0 * pi, 32, pi, 2);
  const auto f = transform(testing::band_limited_real(g, Extent::spatial, 21));
  const auto h = transform(testing::band_limited_real(g, Extent::spatial, 22));
  const double e0 = wave_energy(f, h);
  double drift = 0.0;
  for (double t = 0.5; t <= 10.0; t += 0.5)
    drift = std::max(drift, std::abs(wave_energy(linear_evolution(f, h, t), linear_velocity(f, h, t)) - e0) / e0 / t);
  CHECK(drift <= 1e-10);
}

TEST_CASE("Duhamel kernel against an ODE integration, including resonance") {
  for (double rho : {0.0, 0.5, 3.0})
    for (double tau : {-3.0, -0.5, 0.0, 0.5, 1.0, 3.0, 3.0 + 1e-9})
      for (double t : {-1.3, 0.7, 2.0}) {
        const cplx k = duhamel_kernel(t, tau, rho);
        const cplx o = ode_oracle(t, tau, rho, 4000);
        CAPTURE(rho);
        CAPTURE(tau);
        CAPTURE(t);
        CHECK(std::abs(k - o) < 1e-10 * (1.0 + std::abs(o)));
      }
}

TEST_CASE("trigonometric Duhamel of a cosine forcing matches the closed form") {
  // F = cos(tau0 t) cos(2 x1); u = (cos(tau0 t) - cos(2 t)) / (4 - tau0^2) cos(2 x1)
  const auto g = make_grid(2.0 * pi, 8, 4.0, 32);
  const double tau0 = g.tau(3);
  PhysicalField F(g, Extent::spacetime);
  for (int j = 0; j < g.n_time; ++j)
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) F(j, a, b) = std::cos(tau0 * g.t(j)) * std::cos(2.0 * g.x(a));
  const auto u = trigonometric_duhamel(transform(F), std::vector<bool>(g.n_time, true));
  double e = 0.0;
  for (int j = 0; j < g.n_time; ++j) {
    const double t = g.t(j);
    const auto p = inverse_transform(u[j]);
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        e = std::max(e, std::abs(p(a, b) - (std::cos(tau0 * t) - std::cos(2.0 * t)) / (4.0 - tau0 * tau0) *
                                               std::cos(2.0 * g.x(a))));
  }
  CHECK(e < 1e-13);
}

TEST_CASE("Simpson Duhamel converges at fourth order") {
  const auto g = make_grid(2.0 * pi, 8, pi, 2);
  PhysicalField m(g, Extent::spatial);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) m(a, b) = std::cos(2.0 * g.x(a));
  const auto mh = transform(m);
  auto error = [&](int n) {
    TimeSeries s{0.0, 1.0 / n, {}};
    for (int k = 0; k <= n; ++k) s.samples.push_back(std::cos(0.7 * s.time(k)) * mh);
    const auto u = inverse_transform(duhamel(s, 1.0));
    return std::abs(u(0, 0) - (std::cos(0.7) - std::cos(2.0)) / (4.0 - 0.49));
  };
  const double e1 = error(16), e2 = error(32);
  CHECK(e1 / e2 > 12.0);
  CHECK(error(15) < 1e-5);  // odd panel count uses the 3/8 tail
}

TEST_CASE("cutoff profiles") {
  const CutoffSpec c;
  CHECK(c.chi(0.0) == 1.0);
  CHECK(c.chi(1.0) == 1.0);
  CHECK(c.chi(-2.0) == 0.0);
  CHECK(c.chi(1.5) > 0.0);
  CHECK(c.chi(1.5) < 1.0);
  CHECK(c.phi(2.0) == 1.0);
  CHECK(c.phi(4.0) == 0.0);
  CHECK(c.phi(3.0) == doctest::Approx(0.5));
  double prev = 0.0;
  for (double s = 0.0; s <= 1.0; s += 0.01) {
    CHECK(CutoffSpec::smooth_step(s) >= prev);
    prev = CutoffSpec::smooth_step(s);
  }
}

namespace {

struct AssemblyRun {
  double residual = 0.0;
  double data_error = 0.0;
};

AssemblyRun assembly_run(int nt, bool restore) {
  const auto g = make_grid(2.0 * pi, 32, 4.0, nt);
  PhysicalField F(g, Extent::spacetime), f(g, Extent::spatial), h(g, Extent::spatial);
  for (int j = 0; j < nt; ++j)
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        const double t = g.t(j);
        F(j, a, b) = std::exp(-2.0 * t * t) * std::cos(g.x(a)) * std::sin(2.0 * g.x(b) + 0.3) +
                     std::exp(-3.0 * (t - 0.2) * (t - 0.2)) * std::cos(3.0 * g.x(b));
      }
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      f(a, b) = std::cos(g.x(a) + g.x(b));
      h(a, b) = std::sin(2.0 * g.x(a));
    }
  AssemblyOptions o;
  o.T = 0.5;
  o.restore_initial_data = restore;
  const auto L = assemble_linear_solution(transform(f), transform(h), F, o);
  AssemblyRun out;
  out.residual = wave_residual(L.u, F, o.T / 2.0);
  const int j0 = time_origin_index(g);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) out.data_error = std::max(out.data_error, std::abs(L.u(j0, a, b) - f(a, b)));
  return out;
}

}  // namespace

TEST_CASE("linear assembly solves the forced problem on [-T/2, T/2]") {
  const auto r64 = assembly_run(64, true), r128 = assembly_run(128, true), r256 = assembly_run(256, true);
  CHECK(r128.residual < r64.residual);
  CHECK(r256.residual < r128.residual);
  CHECK(r256.residual <= 1e-4);
  CHECK(r128.data_error < 1e-14);
  // the literal construction leaves the elliptic part's data in u(0)
  const auto lit = assembly_run(128, false);
  CHECK(lit.data_error > 1e-4);
  CHECK(lit.residual == doctest::Approx(r128.residual).epsilon(0.05));
}

TEST_CASE("assembly without forcing is the cut-off free wave") {
  const auto g = make_grid(2.0 * pi, 16, 4.0, 64);
  const auto f = transform(testing::band_limited_real(g, Extent::spatial, 8));
  const auto h = transform(testing::band_limited_real(g, Extent::spatial, 9));
  AssemblyOptions o;
  const auto L = assemble_linear_solution(f, h, PhysicalField{}, o);
  const CutoffSpec c;
  for (int j : {10, 32, 40}) {
    auto expect = inverse_transform(linear_evolution(f, h, g.t(j)));
    expect *= c.chi(g.t(j));
    CHECK(testing::rel_diff(time_slice(L.u, j).values, expect.values) < 1e-13);
  }
  o.T = 1.0;
  CHECK_THROWS_AS(assemble_linear_solution(f, h, PhysicalField{}, o), std::invalid_argument);
}
