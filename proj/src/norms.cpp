#include "nullwave/norms.hpp"

#include <cmath>

#include "nullwave/fft.hpp"
#include "nullwave/multiplier.hpp"

namespace nullwave {

void NormSpec::validate() const {
  if (!(r > 1.0 && r <= 2.0)) throw std::invalid_argument("norm index r must lie in (1, 2]");
}

namespace {

double spatial_weight(double rho, const NormSpec& spec) {
  if (spec.homogeneous) return rho == 0.0 ? 0.0 : std::pow(rho, spec.s);
  return std::pow(bracket(rho), spec.s);
}

}  // namespace

double fl_norm(const SpectralField& f, const NormSpec& spec) {
  spec.validate();
  if (f.extent != Extent::spatial) throw std::invalid_argument("fl_norm needs a spatial field");
  const auto& g = f.grid;
  const double rp = spec.r_prime();
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double a = std::abs(f(i1, i2));
      if (a == 0.0) continue;
      sum += std::pow(spatial_weight(g.xi_norm(i1, i2), spec) * a, rp);
    }
  return std::pow(g.dxi() * g.dxi() * sum, 1.0 / rp);
}

double xsb_norm(const SpectralField& u, const NormSpec& spec) {
  spec.validate();
  if (u.extent != Extent::spacetime) throw std::invalid_argument("xsb_norm needs a space-time field");
  const auto& g = u.grid;
  const double rp = spec.r_prime();
  double sum = 0.0;
  for (int j = 0; j < g.n_time; ++j) {
    const double tau = std::abs(g.tau(j));
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2) {
        const double a = std::abs(u(j, i1, i2));
        if (a == 0.0) continue;
        const double rho = g.xi_norm(i1, i2);
        const double w = spatial_weight(rho, spec) * std::pow(bracket(tau - rho), spec.b);
        sum += std::pow(w * a, rp);
      }
  }
  return std::pow(g.dtau() * g.dxi() * g.dxi() * sum, 1.0 / rp);
}

double z_norm(const SpectralField& u, const NormSpec& spec) {
  return z_norm(u, apply_multiplier(u, MultiplierSpec::time_derivative()), spec);
}

double z_norm(const SpectralField& u, const SpectralField& ut, const NormSpec& spec) {
  u.require_compatible(ut);
  return xsb_norm(u, spec) + xsb_norm(ut, spec.with_s(spec.s - 1.0));
}

double scaling_correspondence(double s, double r, int n) { return s + n * (0.5 - 1.0 / r); }

double critical_exponent(double r, int n) { return n / r; }

PhysicalField sample_centered(const SpacetimeGrid& grid, const std::function<cplx(double, double)>& f) {
  PhysicalField out(grid, Extent::spatial);
  const double L = grid.length;
  for (int i1 = 0; i1 < grid.n; ++i1)
    for (int i2 = 0; i2 < grid.n; ++i2) {
      double x1 = grid.x(i1), x2 = grid.x(i2);
      x1 -= L * std::round(x1 / L);
      x2 -= L * std::round(x2 / L);
      out(i1, i2) = f(x1, x2);
    }
  return out;
}

ScalingCheck scaling_check(const std::function<double(double, double)>& f, double lambda, const NormSpec& spec,
                           const SpacetimeGrid& grid) {
  int exponent = 0;
  if (!(lambda > 0.0) || std::frexp(lambda, &exponent) != 0.5)
    throw std::invalid_argument("scaling_check: lambda must be a power of two");
  if (!spec.homogeneous) throw std::invalid_argument("scaling_check: needs a homogeneous norm");
  SpacetimeGrid scaled = grid;
  scaled.length = grid.length / lambda;
  const auto base = transform(sample_centered(grid, [&](double a, double b) { return cplx(f(a, b)); }));
  const auto dilated =
      transform(sample_centered(scaled, [&](double a, double b) { return cplx(f(lambda * a, lambda * b)); }));
  const double denom = fl_norm(base, spec);
  ScalingCheck out;
  out.measured = denom == 0.0 ? 1.0 : fl_norm(dilated, spec) / denom;
  out.predicted = std::pow(lambda, spec.s - 2.0 / spec.r);
  return out;
}

}  // namespace nullwave
