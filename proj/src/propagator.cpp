#include "nullwave/propagator.hpp"

#include <cmath>
#include <unordered_map>
#include <algorithm>

#include "nullwave/fft.hpp"
#include "nullwave/multiplier.hpp"

namespace nullwave {

SpectralField half_wave(const SpectralField& f0, int sign, double t) {
  return apply_multiplier(f0, MultiplierSpec::half_wave(sign, t));
}

SpectralField linear_evolution(const SpectralField& f, const SpectralField& g, double t) {
  f.require_compatible(g);
  return apply_multiplier(f, MultiplierSpec::cos_td(t)) + apply_multiplier(g, MultiplierSpec::sin_td_over_d(t));
}

SpectralField linear_velocity(const SpectralField& f, const SpectralField& g, double t) {
  f.require_compatible(g);
  SpectralField out(f.grid, Extent::spatial);
  const auto& gr = f.grid;
  for (int i1 = 0; i1 < gr.n; ++i1)
    for (int i2 = 0; i2 < gr.n; ++i2) {
      const double rho = gr.xi_norm(i1, i2);
      out(i1, i2) = -rho * std::sin(t * rho) * f(i1, i2) + std::cos(t * rho) * g(i1, i2);
    }
  return out;
}

std::size_t TimeSeries::index_of(double t) const {
  const double k = (t - t0) / dt;
  const double kr = std::round(k);
  if (std::abs(k - kr) > 1e-9 * std::max(1.0, std::abs(k)) || kr < 0 || kr >= static_cast<double>(samples.size()))
    throw std::out_of_range("time " + std::to_string(t) + " is not a sample of the forcing window");
  return static_cast<std::size_t>(kr);
}

namespace {

// Quadrature weights (in units of h) for m panels: Simpson, with the 3/8 rule
// on the last three panels when m is odd; trapezoid for m = 1.
std::vector<double> simpson_weights(std::size_t m) {
  std::vector<double> w(m + 1, 0.0);
  if (m == 0) return w;
  if (m == 1) {
    w[0] = w[1] = 0.5;
    return w;
  }
  const std::size_t simpson_panels = (m % 2 == 0) ? m : m - 3;
  for (std::size_t k = 0; k + 2 <= simpson_panels; k += 2) {
    w[k] += 1.0 / 3.0;
    w[k + 1] += 4.0 / 3.0;
    w[k + 2] += 1.0 / 3.0;
  }
  if (m % 2 == 1) {
    const std::size_t s = simpson_panels;
    w[s] += 3.0 / 8.0;
    w[s + 1] += 9.0 / 8.0;
    w[s + 2] += 9.0 / 8.0;
    w[s + 3] += 3.0 / 8.0;
  }
  return w;
}

double sinc_kernel(double s, double rho) { return rho == 0.0 ? s : std::sin(s * rho) / rho; }

}  // namespace

SpectralField duhamel(const TimeSeries& forcing, double t) {
  if (forcing.samples.empty()) throw std::invalid_argument("duhamel: empty forcing");
  const std::size_t i0 = forcing.index_of(0.0);
  const std::size_t it = forcing.index_of(t);
  const auto& g = forcing.samples.front().grid;
  SpectralField out(g, Extent::spatial);
  if (it == i0) return out;
  const std::size_t m = it > i0 ? it - i0 : i0 - it;
  const double h = it > i0 ? forcing.dt : -forcing.dt;
  const auto w = simpson_weights(m);
  for (std::size_t k = 0; k <= m; ++k) {
    const std::size_t idx = it > i0 ? i0 + k : i0 - k;
    const double lag = t - forcing.time(idx);
    const auto& F = forcing.samples[idx];
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2)
        out(i1, i2) += h * w[k] * sinc_kernel(lag, g.xi_norm(i1, i2)) * F(i1, i2);
  }
  return out;
}

std::vector<SpectralField> duhamel_series(const TimeSeries& forcing, std::size_t origin) {
  const std::size_t n = forcing.samples.size();
  if (n == 0 || origin >= n) throw std::invalid_argument("duhamel_series: bad origin");
  const auto& g = forcing.samples.front().grid;
  const std::size_t modes = g.spatial_size();
  // kernel table over lags d * dt, d = 0..n-1
  std::vector<double> kernel(n * modes);
  for (std::size_t d = 0; d < n; ++d)
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2)
        kernel[d * modes + i1 * g.n + i2] = sinc_kernel(d * forcing.dt, g.xi_norm(i1, i2));
  std::vector<SpectralField> out(n, SpectralField(g, Extent::spatial));
  for (std::size_t it = 0; it < n; ++it) {
    if (it == origin) continue;
    const std::size_t m = it > origin ? it - origin : origin - it;
    const double h = it > origin ? forcing.dt : -forcing.dt;
    const double sgn = it > origin ? 1.0 : -1.0;  // kernel is odd in the lag
    const auto w = simpson_weights(m);
    auto& acc = out[it].values;
    for (std::size_t k = 0; k <= m; ++k) {
      const std::size_t idx = it > origin ? origin + k : origin - k;
      const std::size_t lag = it > idx ? it - idx : idx - it;
      const double c = h * w[k] * sgn;
      const double* K = &kernel[lag * modes];
      const auto& F = forcing.samples[idx].values;
      for (std::size_t q = 0; q < modes; ++q) acc[q] += c * K[q] * F[q];
    }
  }
  return out;
}

double wave_energy(const SpectralField& u, const SpectralField& ut) {
  u.require_compatible(ut);
  if (u.extent != Extent::spatial) throw std::invalid_argument("wave_energy needs spatial fields");
  const auto& g = u.grid;
  double acc = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double rho = g.xi_norm(i1, i2);
      acc += std::norm(ut(i1, i2)) + rho * rho * std::norm(u(i1, i2));
    }
  return 0.5 * acc * g.dxi() * g.dxi();
}

namespace {

// (e^{ix} - 1) / (ix)
cplx expm1_ratio(double x) {
  if (std::abs(x) < 1e-4) return {1.0 - x * x / 6.0, x / 2.0};
  return std::sin(x / 2.0) / (x / 2.0) * std::polar(1.0, x / 2.0);
}

}  // namespace

cplx duhamel_kernel(double t, double tau, double rho) {
  const cplx i{0.0, 1.0};
  if (rho == 0.0) {
    const double z = tau * t;
    if (std::abs(z) < 1e-3) return t * t * cplx{0.5 - z * z / 24.0, z / 6.0};
    return -(std::polar(1.0, z) - 1.0 - i * z) / (tau * tau);
  }
  const double s = std::sin(rho * t) / rho;
  if (tau >= 0.0) return (-i * t * std::polar(1.0, rho * t) * expm1_ratio(t * (tau - rho)) + i * s) / (rho + tau);
  return (i * t * std::polar(1.0, -rho * t) * expm1_ratio(t * (tau + rho)) - i * s) / (rho - tau);
}

std::vector<SpectralField> trigonometric_duhamel(const SpectralField& forcing, const std::vector<bool>& keep) {
  if (forcing.extent != Extent::spacetime) throw std::invalid_argument("trigonometric_duhamel needs a space-time field");
  const auto& g = forcing.grid;
  const int nt = g.n_time;
  if (static_cast<int>(keep.size()) != nt) throw std::invalid_argument("trigonometric_duhamel: keep mask size");
  // with the unitary normalisation the spatial spectrum at time t is
  // sum_m c_m e^{i tau_m t}, c_m = sqrt(2 pi) / (n_t dt) * forcing(m, xi)
  const double scale = std::sqrt(2.0 * pi) / (nt * g.dt());
  double peak = 0.0;
  for (const auto& v : forcing.values) peak = std::max(peak, std::abs(v));
  std::vector<SpectralField> out(nt, SpectralField(g, Extent::spatial));
  if (peak == 0.0) return out;
  // the kernel depends on xi only through k1^2 + k2^2
  std::unordered_map<long long, std::vector<cplx>> cache;
  for (int m = 0; m < nt; ++m)
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2) {
        const cplx c = forcing(m, i1, i2);
        if (std::abs(c) <= 1e-17 * peak) continue;
        const long long k1 = SpacetimeGrid::wavenumber(i1, g.n), k2 = SpacetimeGrid::wavenumber(i2, g.n);
        const long long key = (k1 * k1 + k2 * k2) * nt + m;
        auto [it, fresh] = cache.try_emplace(key);
        if (fresh) {
          it->second.resize(nt);
          const double rho = g.xi_norm(i1, i2), tau = g.tau(m);
          for (int j = 0; j < nt; ++j) it->second[j] = keep[j] ? duhamel_kernel(g.t(j), tau, rho) : 0.0;
        }
        const auto& w = it->second;
        for (int j = 0; j < nt; ++j)
          if (keep[j]) out[j](i1, i2) += scale * c * w[j];
      }
  return out;
}

double CutoffSpec::smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

double CutoffSpec::chi(double t) const { return smooth_step(2.0 - std::abs(t)); }

double CutoffSpec::phi(double x) const { return smooth_step((4.0 - std::abs(x)) / 2.0); }

void AssemblyOptions::validate() const {
  if (!(T > 0.0 && T < 1.0)) throw std::invalid_argument("assembly: T must lie in (0, 1)");
  if (!(r > 1.0 && r <= 2.0)) throw std::invalid_argument("assembly: r must lie in (1, 2]");
  if (!(b > 1.0 / r && b < 1.0)) throw std::invalid_argument("assembly: b must lie in (1/r, 1)");
  if (!(eps > 0.0 && eps < 1.0 - b)) throw std::invalid_argument("assembly: eps must lie in (0, 1-b)");
}

PhysicalField box(const PhysicalField& u) {
  if (u.extent != Extent::spacetime) throw std::invalid_argument("box needs a space-time field");
  auto s = transform(u);
  const auto& g = u.grid;
  for (int j = 0; j < g.n_time; ++j) {
    const double tau = g.tau(j);
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2) {
        const double rho = g.xi_norm(i1, i2);
        s(j, i1, i2) *= rho * rho - tau * tau;
      }
  }
  return inverse_transform(s);
}

double wave_residual(const PhysicalField& u, const PhysicalField& forcing, double t_max) {
  u.require_compatible(forcing);
  const auto bu = box(u);
  const auto& g = u.grid;
  const std::size_t m = g.spatial_size();
  double num = 0.0, den = 0.0;
  for (int j = 0; j < g.n_time; ++j) {
    if (std::abs(g.t(j)) > t_max + 1e-12) continue;
    for (std::size_t k = 0; k < m; ++k) {
      num += std::norm(bu.values[j * m + k] - forcing.values[j * m + k]);
      den += std::norm(forcing.values[j * m + k]);
    }
  }
  return den == 0.0 ? std::sqrt(num * g.dt() * g.dx() * g.dx()) : std::sqrt(num / den);
}

LinearAssembly assemble_linear_solution(const SpectralField& f, const SpectralField& g, const PhysicalField& forcing,
                                        const AssemblyOptions& options) {
  options.validate();
  f.require_compatible(g);
  if (f.extent != Extent::spatial) throw std::invalid_argument("assembly: data must be spatial fields");
  const auto& grid = f.grid;
  const bool has_forcing = !forcing.values.empty();
  if (has_forcing && (!(forcing.grid == grid) || forcing.extent != Extent::spacetime))
    throw std::invalid_argument("assembly: forcing must be a space-time field on the data grid");

  LinearAssembly out;
  out.low_forcing = SpectralField(grid, Extent::spacetime);
  out.high_forcing = SpectralField(grid, Extent::spacetime);
  out.duhamel_part = PhysicalField(grid, Extent::spacetime);
  out.elliptic_part = PhysicalField(grid, Extent::spacetime);

  const double sqrtT = std::sqrt(options.T);
  const std::size_t m = grid.spatial_size();
  SpectralField f0 = f, g0 = g;

  if (has_forcing) {
    const auto Ft = transform(forcing);
    SpectralField u2(grid, Extent::spacetime);
    for (int j = 0; j < grid.n_time; ++j) {
      const double tau = grid.tau(j);
      for (int i1 = 0; i1 < grid.n; ++i1)
        for (int i2 = 0; i2 < grid.n; ++i2) {
          const double rho = grid.xi_norm(i1, i2);
          const double cut = options.cutoffs.phi(sqrtT * bracket(std::abs(tau) - rho));
          const cplx v = Ft(j, i1, i2);
          out.low_forcing(j, i1, i2) = cut * v;
          out.high_forcing(j, i1, i2) = v - cut * v;
          // off the support of 1 - phi the modulation exceeds 2/sqrt(T) - 1 > 1
          if (cut < 1.0) u2(j, i1, i2) = out.high_forcing(j, i1, i2) / (rho * rho - tau * tau);
        }
    }
    out.elliptic_part = inverse_transform(u2);

    if (options.restore_initial_data) {
      // data of u2 at t = 0: value and i tau derivative, summed over tau
      const auto u2t = inverse_transform(apply_multiplier(u2, MultiplierSpec::time_derivative()));
      const int j0 = time_origin_index(grid);
      f0 -= transform(time_slice(out.elliptic_part, j0));
      g0 -= transform(time_slice(u2t, j0));
    }

    std::vector<bool> keep(grid.n_time);
    for (int j = 0; j < grid.n_time; ++j) keep[j] = options.cutoffs.chi(grid.t(j) / options.T) != 0.0;
    const auto u1 = trigonometric_duhamel(out.low_forcing, keep);
    for (int j = 0; j < grid.n_time; ++j) {
      const double c = options.cutoffs.chi(grid.t(j) / options.T);
      if (c == 0.0) continue;
      const auto slice = inverse_transform(u1[j]);
      for (std::size_t k = 0; k < m; ++k) out.duhamel_part.values[j * m + k] = c * slice.values[k];
    }
  }

  out.free_part = PhysicalField(grid, Extent::spacetime);
  for (int j = 0; j < grid.n_time; ++j) {
    const double c = options.cutoffs.chi(grid.t(j));
    if (c == 0.0) continue;
    const auto slice = inverse_transform(linear_evolution(f0, g0, grid.t(j)));
    for (std::size_t k = 0; k < m; ++k) out.free_part.values[j * m + k] = c * slice.values[k];
  }

  out.u = out.free_part + out.duhamel_part + out.elliptic_part;
  return out;
}

}  // namespace nullwave
