#pragma once

#include <string>
#include <vector>

#include "nullwave/grid.hpp"

namespace nullwave {

/// e^{+-itD} applied to a spatial spectral field.
SpectralField half_wave(const SpectralField& f0, int sign, double t);

/// cos(tD) f + D^{-1} sin(tD) g, with sin(t rho)/rho = t at rho = 0.
SpectralField linear_evolution(const SpectralField& f, const SpectralField& g, double t);
/// Time derivative of linear_evolution: -D sin(tD) f + cos(tD) g.
SpectralField linear_velocity(const SpectralField& f, const SpectralField& g, double t);

/// Uniformly sampled spatial spectral fields, sample k at time t0 + k dt.
struct TimeSeries {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<SpectralField> samples;

  double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
  /// Index of a sample time; throws if t is off the lattice or outside.
  std::size_t index_of(double t) const;
};

/// int_0^t D^{-1} sin((t-t')D) F(t') dt' by composite Simpson (3/8 rule on
/// the last three panels for odd panel counts). 0 and t must be sample times.
SpectralField duhamel(const TimeSeries& forcing, double t);

/// duhamel at every sample time, with `origin` the index of t = 0.
std::vector<SpectralField> duhamel_series(const TimeSeries& forcing, std::size_t origin);

/// Solution at time t of w'' + rho^2 w = e^{i tau t}, w(0) = w'(0) = 0,
/// written to stay accurate at and near resonance |tau| = rho.
cplx duhamel_kernel(double t, double tau, double rho);

/// Exact Duhamel integral of the trigonometric interpolant in time of a
/// forcing given by its space-time spectrum; the result is spatial-spectral
/// per time sample. Samples with keep[j] false are left at zero.
std::vector<SpectralField> trigonometric_duhamel(const SpectralField& forcing, const std::vector<bool>& keep);

/// (1/2) int |u_t|^2 + |grad u|^2 dx, evaluated on the spectral side.
double wave_energy(const SpectralField& u, const SpectralField& ut);

/// Smooth cutoffs built from the exp(-1/s) smooth step.
///   chi = 1 on [-1, 1], supp chi in [-2, 2]
///   phi = 1 on [-2, 2], supp phi in [-4, 4]
struct CutoffSpec {
  static double smooth_step(double s);
  double chi(double t) const;
  double phi(double x) const;
  std::string profile() const { return "exp(-1/s) smooth step, plateau [-1,1]/[-2,2], support (-2,2)/(-4,4)"; }
};

struct AssemblyOptions {
  double T = 0.5;
  double b = 0.9;
  double eps = 0.05;
  double r = 1.25;
  /// Subtracts from the free part the free wave carrying the data of the
  /// high-modulation piece at t = 0, so u(0) = f and u_t(0) = g hold exactly.
  bool restore_initial_data = false;
  CutoffSpec cutoffs;

  void validate() const;
};

/// u = chi(t) u0 + chi(t/T) u1 + u2 on the space-time grid, with F split into
/// F1 = phi(T^{1/2} <|tau|-|xi|>) F and F2 = F - F1, u1 the Duhamel integral
/// of F1 and u2 = Box^{-1} F2.
struct LinearAssembly {
  PhysicalField u;
  PhysicalField free_part;      // chi(t) u0
  PhysicalField duhamel_part;   // chi(t/T) u1
  PhysicalField elliptic_part;  // u2
  SpectralField low_forcing;    // F1 (space-time spectral)
  SpectralField high_forcing;   // F2
};

/// f, g: spatial spectral data; forcing: space-time physical field (may be empty).
LinearAssembly assemble_linear_solution(const SpectralField& f, const SpectralField& g, const PhysicalField& forcing,
                                        const AssemblyOptions& options);

/// Box u = u_tt - Laplacian u, evaluated spectrally on the periodic window.
PhysicalField box(const PhysicalField& u);

/// ||Box u - F|| / ||F|| in L^2 over samples with |t| <= t_max (absolute when F = 0).
double wave_residual(const PhysicalField& u, const PhysicalField& forcing, double t_max);

/// Index of the time sample t = 0 on the space-time grid.
inline int time_origin_index(const SpacetimeGrid& g) { return g.n_time / 2; }

}  // namespace nullwave
