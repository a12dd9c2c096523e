#include "nullwave/solver.hpp"

#include <cmath>
#include <limits>

#include "nullwave/fft.hpp"
#include "nullwave/parallel.hpp"
#include "nullwave/rng.hpp"

namespace nullwave {

namespace {

using Fields = std::vector<SpectralField>;

SpectralField derivative(const SpectralField& f, int axis) {
  SpectralField out(f.grid, Extent::spatial);
  const auto& g = f.grid;
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const int i = axis == 0 ? i1 : i2;
      out(i1, i2) = g.nyquist(i) ? cplx(0.0) : cplx(0.0, g.xi(i)) * f(i1, i2);
    }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  SpectralField out(f.grid, Extent::spatial);
  const auto& g = f.grid;
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double k = g.xi_norm(i1, i2);
      out(i1, i2) = -k * k * f(i1, i2);
    }
  return out;
}

SpectralField truncated(SpectralField f) {
  dealias(f);
  return f;
}

Fields axpy(const Fields& x, double a, const Fields& y) {
  Fields out = x;
  for (std::size_t c = 0; c < out.size(); ++c)
    for (std::size_t k = 0; k < out[c].values.size(); ++k) out[c].values[k] += a * y[c].values[k];
  return out;
}

double norm_sq(const Fields& fields) {
  double acc = 0.0;
  for (const auto& f : fields)
    for (const auto& v : f.values) acc += std::norm(v);
  return fields.empty() ? 0.0 : acc * fields.front().grid.dxi() * fields.front().grid.dxi();
}

}  // namespace

NlwSystem NlwSystem::diagonal(NullFormKind kind) { return NlwSystem{1, {{0, 0, 0, kind}}}; }

NlwSystem NlwSystem::cross_pair(NullFormKind kind) { return NlwSystem{2, {{0, 0, 1, kind}, {1, 1, 0, kind}}}; }

NlwSystem NlwSystem::linear(int components) { return NlwSystem{components, {}}; }

void NlwSystem::validate() const {
  if (components < 1) throw std::invalid_argument("nlw system: need at least one component");
  for (const auto& t : terms)
    for (int c : {t.target, t.left, t.right})
      if (c < 0 || c >= components) throw std::invalid_argument("nlw system: coupling index out of range");
}

void CauchyData::validate(int components) const {
  if (static_cast<int>(f.size()) != components || static_cast<int>(g.size()) != components)
    throw std::invalid_argument("cauchy data: component count mismatch");
  for (int c = 0; c < components; ++c) {
    if (f[c].extent != Extent::spatial || g[c].extent != Extent::spatial)
      throw std::invalid_argument("cauchy data: fields must be spatial");
    f[c].require_compatible(f.front());
    g[c].require_compatible(f.front());
  }
}

double max_stable_dt(const SpacetimeGrid& grid, double cfl) { return cfl * grid.length / (grid.n * pi); }

Fields nlw_source(const NlwSystem& system, const Fields& u, const Fields& ut) {
  Fields out;
  for (const auto& f : u) out.emplace_back(f.grid, Extent::spatial);
  if (system.terms.empty()) return out;
  std::vector<Gradient> grad;
  for (int c = 0; c < system.components; ++c) {
    const auto uc = truncated(u[c]);
    grad.push_back({inverse_transform(truncated(ut[c])), inverse_transform(derivative(uc, 0)),
                    inverse_transform(derivative(uc, 1))});
  }
  for (const auto& t : system.terms) {
    auto q = transform(combine(t.kind, grad[t.left], grad[t.right]));
    dealias(q);
    out[t.target] += q;
  }
  return out;
}

Trajectory evolve_nlw(const NlwSystem& system, const CauchyData& data, const EvolveOptions& options) {
  system.validate();
  data.validate(system.components);
  const SpacetimeGrid& grid = data.f.front().grid;
  if (!(options.dt > 0.0) || !(options.t_end >= 0.0)) throw std::invalid_argument("evolve_nlw: bad time range");
  if (options.dt > max_stable_dt(grid, options.cfl) * (1.0 + 1e-12))
    throw std::invalid_argument("evolve_nlw: dt exceeds the CFL bound " + std::to_string(max_stable_dt(grid, options.cfl)));
  const long steps = std::lround(options.t_end / options.dt);
  if (std::abs(steps * options.dt - options.t_end) > 1e-9 * std::max(1.0, options.t_end))
    throw std::invalid_argument("evolve_nlw: t_end is not a multiple of dt");
  if (options.sample_every < 1 || steps % options.sample_every != 0)
    throw std::invalid_argument("evolve_nlw: sample_every must divide the step count");

  Trajectory traj;
  traj.grid = grid;
  traj.dt = options.dt;
  traj.sample_every = options.sample_every;
  Fields u = data.f, ut = data.g;
  auto record = [&](long step) {
    traj.times.push_back(step * options.dt);
    traj.u.push_back(u);
    traj.ut.push_back(ut);
  };
  record(0);
  const double initial = std::sqrt(norm_sq(u) + norm_sq(ut));
  auto accel = [&](const Fields& a, const Fields& at) {
    auto n = nlw_source(system, a, at);
    for (int c = 0; c < system.components; ++c) n[c] += laplacian(a[c]);
    return n;
  };
  const double h = options.dt;
  for (long step = 1; step <= steps; ++step) {
    const auto k1u = ut;
    const auto k1v = accel(u, ut);
    const auto u2 = axpy(u, h / 2, k1u), v2 = axpy(ut, h / 2, k1v);
    const auto k2u = v2;
    const auto k2v = accel(u2, v2);
    const auto u3 = axpy(u, h / 2, k2u), v3 = axpy(ut, h / 2, k2v);
    const auto k3u = v3;
    const auto k3v = accel(u3, v3);
    const auto u4 = axpy(u, h, k3u), v4 = axpy(ut, h, k3v);
    const auto k4u = v4;
    const auto k4v = accel(u4, v4);
    for (int c = 0; c < system.components; ++c)
      for (std::size_t k = 0; k < u[c].values.size(); ++k) {
        u[c].values[k] += h / 6 * (k1u[c].values[k] + 2.0 * k2u[c].values[k] + 2.0 * k3u[c].values[k] + k4u[c].values[k]);
        ut[c].values[k] += h / 6 * (k1v[c].values[k] + 2.0 * k2v[c].values[k] + 2.0 * k3v[c].values[k] + k4v[c].values[k]);
      }
    const double now = std::sqrt(norm_sq(u) + norm_sq(ut));
    if (!std::isfinite(now) || (initial > 0.0 && now > options.growth_limit * initial))
      throw SolverInstability("evolve_nlw: state norm grew from " + std::to_string(initial) + " to " +
                              std::to_string(now) + " at t = " + std::to_string(step * h));
    if (step % options.sample_every == 0) record(step);
  }
  return traj;
}

std::vector<double> nlw_residual(const Trajectory& traj, const NlwSystem& system) {
  const std::size_t k_max = traj.u.size();
  if (k_max < 5) throw std::invalid_argument("nlw_residual: need at least five samples");
  const double h = traj.dt * traj.sample_every;
  std::vector<double> out;
  for (std::size_t k = 2; k + 2 < k_max; ++k) {
    auto res = nlw_source(system, traj.u[k], traj.ut[k]);
    for (int c = 0; c < system.components; ++c) {
      const auto lap = laplacian(traj.u[k][c]);
      for (std::size_t m = 0; m < res[c].values.size(); ++m) {
        const cplx utt = (-traj.u[k - 2][c].values[m] + 16.0 * traj.u[k - 1][c].values[m] -
                          30.0 * traj.u[k][c].values[m] + 16.0 * traj.u[k + 1][c].values[m] -
                          traj.u[k + 2][c].values[m]) /
                         (12.0 * h * h);
        res[c].values[m] = utt - lap.values[m] - res[c].values[m];
      }
    }
    out.push_back(std::sqrt(norm_sq(res)));
  }
  return out;
}

double l2_norm(const Fields& fields) { return std::sqrt(norm_sq(fields)); }

double relative_l2(const Fields& a, const Fields& b) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_l2: component count mismatch");
  Fields d = a;
  for (std::size_t c = 0; c < d.size(); ++c) d[c] -= b[c];
  const double ref = l2_norm(b);
  return ref > 0.0 ? l2_norm(d) / ref : l2_norm(d);
}

ScalingCovariance scaling_covariance(const NlwSystem& system, const CauchyData& data, const EvolveOptions& options,
                                     double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaling_covariance: lambda must be positive");
  system.validate();
  data.validate(system.components);
  SpacetimeGrid scaled = data.f.front().grid;
  scaled.length /= lambda;
  // same samples on the smaller torus; the unitary spectrum picks up lambda^-2
  CauchyData rescaled;
  for (int c = 0; c < system.components; ++c) {
    SpectralField f(scaled, Extent::spatial), g(scaled, Extent::spatial);
    f.values = data.f[c].values;
    g.values = data.g[c].values;
    rescaled.f.push_back(std::pow(lambda, -2.0) * f);
    rescaled.g.push_back(std::pow(lambda, -1.0) * g);
  }
  EvolveOptions fine = options;
  fine.t_end = options.t_end / lambda;
  fine.dt = options.dt / lambda;
  const auto reference = evolve_nlw(system, data, options);
  const auto dilated = evolve_nlw(system, rescaled, fine);
  ScalingCovariance out;
  out.lambda = lambda;
  const auto& u = reference.u.back();
  const auto& v = dilated.u.back();
  double num = 0.0, den = 0.0;
  const double w = std::pow(lambda, -2.0);
  for (int c = 0; c < system.components; ++c)
    for (std::size_t k = 0; k < u[c].values.size(); ++k) {
      num += std::norm(v[c].values[k] - w * u[c].values[k]);
      den += std::norm(w * u[c].values[k]);
    }
  out.reference_norm = std::sqrt(den);
  out.mismatch = den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
  return out;
}

SpectralField rough_data(const SpacetimeGrid& grid, double amplitude, double s, double r, std::uint64_t seed,
                         std::uint64_t stream) {
  SpectralField f(grid, Extent::spatial);
  const CounterRng rng(seed);
  const double rp = r / (r - 1.0);
  for (int i1 = 0; i1 < grid.n; ++i1)
    for (int i2 = 0; i2 < grid.n; ++i2) {
      if (!inside_dealiased_band(i1, grid.n) || !inside_dealiased_band(i2, grid.n)) continue;
      const int j1 = grid.negate(i1), j2 = grid.negate(i2);
      if (std::make_pair(j1, j2) < std::make_pair(i1, i2)) continue;
      const double mag = amplitude * std::pow(bracket(grid.xi(i1), grid.xi(i2)), -s - 2.0 / rp);
      if (j1 == i1 && j2 == i2) {
        f(i1, i2) = mag;
        continue;
      }
      const cplx v = std::polar(mag, 2.0 * pi * rng.uniform(f.index(i1, i2), stream));
      f(i1, i2) = v;
      f(j1, j2) = std::conj(v);
    }
  return f;
}

CancellationReport null_cancellation_experiment(const SpacetimeGrid& grid, const std::vector<NullFormKind>& kinds,
                                                const std::vector<double>& roughness, double amplitude,
                                                const NormSpec& norm, const EvolveOptions& options,
                                                std::uint64_t seed, int jobs) {
  norm.validate();
  CancellationReport rep;
  rep.seed = seed;
  rep.rows.resize(kinds.size() * roughness.size());
  parallel_for(rep.rows.size(), jobs, [&](std::size_t i) {
    const NullFormKind kind = kinds[i / roughness.size()];
    const double rough = roughness[i % roughness.size()];
    CancellationRow row{kind, rough};
    CauchyData data;
    for (std::uint64_t c = 0; c < 2; ++c) {
      data.f.push_back(rough_data(grid, amplitude, rough, norm.r, seed, c));
      data.g.emplace_back(grid, Extent::spatial);
    }
    auto fl = [&](const Fields& u) {
      double acc = 0.0;
      for (const auto& f : u) acc += std::pow(fl_norm(f, norm), 2.0);
      return std::sqrt(acc);
    };
    row.initial_norm = fl(data.f);
    try {
      const auto traj = evolve_nlw(NlwSystem::cross_pair(kind), data, options);
      for (const auto& u : traj.u) row.max_norm = std::max(row.max_norm, fl(u));
      row.growth = row.initial_norm > 0.0 ? row.max_norm / row.initial_norm : 1.0;
    } catch (const SolverInstability&) {
      row.aborted = true;
      row.max_norm = row.growth = std::numeric_limits<double>::infinity();
    }
    rep.rows[i] = row;
  });
  return rep;
}

}  // namespace nullwave
