#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullwave/grid.hpp"
#include "nullwave/norms.hpp"
#include "nullwave/nullforms.hpp"

namespace nullwave {

/// One quadratic source term: Box u^target += Q_kind(u^left, u^right).
struct CouplingTerm {
  int target = 0, left = 0, right = 0;
  NullFormKind kind = NullFormKind::q12;
};

/// Component wiring of Box u^I = Q(u^J, u^K).
struct NlwSystem {
  int components = 1;
  std::vector<CouplingTerm> terms;

  /// Box u = Q(u, u). Note Q_ij(u, u) vanishes identically.
  static NlwSystem diagonal(NullFormKind kind);
  /// Box u0 = Q(u0, u1), Box u1 = Q(u1, u0): non-trivial for every kind.
  static NlwSystem cross_pair(NullFormKind kind);
  /// Free waves with the given number of components.
  static NlwSystem linear(int components = 1);
  void validate() const;
};

/// Cauchy data, one spatial spectral field per component.
struct CauchyData {
  std::vector<SpectralField> f, g;
  void validate(int components) const;
};

struct EvolveOptions {
  double t_end = 1.0;
  double dt = 0.01;
  int sample_every = 1;
  double cfl = 0.5;           // dt * N pi / L must not exceed this
  double growth_limit = 1e6;  // abort when the state norm grows past this factor
};

/// Sampled states; u[k][c] is component c at times[k].
struct Trajectory {
  SpacetimeGrid grid;
  double dt = 0.0;
  int sample_every = 1;
  std::vector<double> times;
  std::vector<std::vector<SpectralField>> u, ut;
};

struct SolverInstability : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Largest stable step under the CFL bound of options.
double max_stable_dt(const SpacetimeGrid& grid, double cfl);

/// Source terms N(u) (spatial spectral, one per component) from the state.
std::vector<SpectralField> nlw_source(const NlwSystem& system, const std::vector<SpectralField>& u,
                                      const std::vector<SpectralField>& ut);

/// Classical RK4 on (u, u_t) with spectral Laplacian and dealiased sources.
Trajectory evolve_nlw(const NlwSystem& system, const CauchyData& data, const EvolveOptions& options);

/// ||Box u - N(u)||_{L^2} per interior sample, Box u_tt by the 5-point
/// fourth-order stencil on the sample spacing. Needs at least 5 samples.
std::vector<double> nlw_residual(const Trajectory& trajectory, const NlwSystem& system);

/// L^2 norm over space of a list of spectral components (Parseval).
double l2_norm(const std::vector<SpectralField>& fields);

/// Relative L^2 distance of two component lists.
double relative_l2(const std::vector<SpectralField>& a, const std::vector<SpectralField>& b);

/// Rough data with spectrum A <xi>^{-s - 2/r'} and seeded random phases,
/// real in physical space.
SpectralField rough_data(const SpacetimeGrid& grid, double amplitude, double s, double r, std::uint64_t seed,
                         std::uint64_t stream);

/// Discrete scaling covariance: u solves the system on a torus of side L,
/// u_lambda(t, x) = u(lambda t, lambda x) solves it on side L / lambda with
/// data f(lambda x), lambda g(lambda x). Evolves both (the rescaled one with
/// dt / lambda) and returns the relative L2 mismatch at the final time.
struct ScalingCovariance {
  double lambda = 2.0;
  double mismatch = 0.0;
  double reference_norm = 0.0;
};
ScalingCovariance scaling_covariance(const NlwSystem& system, const CauchyData& data, const EvolveOptions& options,
                                     double lambda);

struct CancellationRow {
  NullFormKind kind;
  double roughness = 0.0;
  double initial_norm = 0.0;
  double max_norm = 0.0;
  double growth = 0.0;  // max_t ||u(t)|| / ||u(0)|| in H^r_s
  bool aborted = false;
};

struct CancellationReport {
  std::vector<CancellationRow> rows;
  std::uint64_t seed = 0;
};

/// Per kind and roughness, evolves cross-pair systems from rough_data and
/// records growth of the Fourier-Lebesgue norm over the window.
CancellationReport null_cancellation_experiment(const SpacetimeGrid& grid, const std::vector<NullFormKind>& kinds,
                                                const std::vector<double>& roughness, double amplitude,
                                                const NormSpec& norm, const EvolveOptions& options,
                                                std::uint64_t seed, int jobs = 1);

}  // namespace nullwave
