#include "nullwave/foliation.hpp"

#include <cmath>

namespace nullwave {

std::pair<SpectralField, SpectralField> split_half_spaces(const SpectralField& u) {
  if (u.extent != Extent::spacetime) throw std::invalid_argument("split_half_spaces needs a space-time field");
  SpectralField plus(u.grid, Extent::spacetime), minus(u.grid, Extent::spacetime);
  const std::size_t m = u.grid.spatial_size();
  for (int j = 0; j < u.grid.n_time; ++j) {
    auto& dst = u.grid.tau(j) >= 0.0 ? plus : minus;
    std::copy(u.values.begin() + j * m, u.values.begin() + (j + 1) * m, dst.values.begin() + j * m);
  }
  return {plus, minus};
}

namespace {

int lattice_index(const SpacetimeGrid& g, int j) { return SpacetimeGrid::wavenumber(j, g.n_time); }

}  // namespace

FoliationData foliation_decompose(const SpectralField& u, double b) {
  if (u.extent != Extent::spacetime) throw std::invalid_argument("foliation_decompose needs a space-time field");
  const auto& g = u.grid;
  FoliationData d;
  d.grid = g;
  d.b = b;
  d.shift.resize(g.spatial_size());
  int smax = 0;
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const int s = static_cast<int>(std::floor(g.xi_norm(i1, i2) / g.dtau() + 0.5));
      d.shift[i1 * g.n + i2] = s;
      smax = std::max(smax, s);
    }
  const int half = g.n_time / 2;
  d.rho_min = std::min(-half, -smax);
  const int rho_max = std::max(half - 1, smax - 1);
  const std::size_t slots = static_cast<std::size_t>(rho_max - d.rho_min + 1);
  d.plus.assign(slots, SpectralField(g, Extent::spatial));
  d.minus.assign(slots, SpectralField(g, Extent::spatial));

  for (int j = 0; j < g.n_time; ++j) {
    const int k = lattice_index(g, j);
    const double tau = g.tau(j);
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2) {
        const cplx v = u(j, i1, i2);
        const int s = d.shift[i1 * g.n + i2];
        const double rho_abs = g.xi_norm(i1, i2);
        if (tau >= 0.0) {
          const double rho = tau - rho_abs;
          d.plus[k - s - d.rho_min](i1, i2) = std::pow(bracket(rho), b) * v;
        } else {
          const double rho = tau + rho_abs;
          d.minus[k + s - d.rho_min](i1, i2) = std::pow(bracket(rho), b) * v;
        }
      }
  }
  return d;
}

SpectralField foliation_reconstruct(const FoliationData& d) {
  const auto& g = d.grid;
  SpectralField u(g, Extent::spacetime);
  for (int j = 0; j < g.n_time; ++j) {
    const int k = lattice_index(g, j);
    const double tau = g.tau(j);
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2) {
        const int s = d.shift[i1 * g.n + i2];
        const double rho_abs = g.xi_norm(i1, i2);
        if (tau >= 0.0)
          u(j, i1, i2) = d.plus[k - s - d.rho_min](i1, i2) / std::pow(bracket(tau - rho_abs), d.b);
        else
          u(j, i1, i2) = d.minus[k + s - d.rho_min](i1, i2) / std::pow(bracket(tau + rho_abs), d.b);
      }
  }
  return u;
}

double foliation_norm(const FoliationData& d, int sign, const NormSpec& spec) {
  spec.validate();
  const auto& family = sign >= 0 ? d.plus : d.minus;
  const double rp = spec.r_prime();
  double sum = 0.0;
  for (const auto& f : family) {
    const double n = fl_norm(f, spec);
    if (n > 0.0) sum += std::pow(n, rp);
  }
  return std::pow(d.grid.dtau() * sum, 1.0 / rp);
}

SpectralField foliation_time_slice(const FoliationData& d, int sign, double t) {
  const auto& g = d.grid;
  const auto& family = sign >= 0 ? d.plus : d.minus;
  SpectralField out(g, Extent::spatial);
  const double w = g.dtau() / std::sqrt(2.0 * pi);
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const int s = d.shift[i1 * g.n + i2];
      const double rho_abs = g.xi_norm(i1, i2);
      cplx acc = 0.0;
      for (std::size_t slot = 0; slot < family.size(); ++slot) {
        const cplx v = family[slot](i1, i2);
        if (v == 0.0) continue;
        const int rho_idx = static_cast<int>(slot) + d.rho_min;
        const int k = sign >= 0 ? rho_idx + s : rho_idx - s;
        const double tau = k * g.dtau();
        const double rho = sign >= 0 ? tau - rho_abs : tau + rho_abs;
        acc += std::polar(1.0, t * tau) * v / std::pow(bracket(rho), d.b);
      }
      out(i1, i2) = w * acc;
    }
  return out;
}

double foliation_support_violation(const FoliationData& d, double slack) {
  const auto& g = d.grid;
  double worst = 0.0;
  for (std::size_t slot = 0; slot < d.slots(); ++slot) {
    const double rho = d.rho(slot);
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2) {
        const double a = g.xi_norm(i1, i2);
        if (a < -rho - slack) worst = std::max(worst, std::abs(d.plus[slot](i1, i2)));
        if (a < rho - slack) worst = std::max(worst, std::abs(d.minus[slot](i1, i2)));
      }
  }
  return worst;
}

}  // namespace nullwave
