#pragma once

#include <functional>

#include "nullwave/grid.hpp"

namespace nullwave {

/// Regularity triple (s, b, r) selecting a Fourier-Lebesgue or X^r_{s,b} norm.
/// The Lebesgue exponent on the Fourier side is r' = r/(r-1).
struct NormSpec {
  double s = 0.0;
  double b = 0.0;
  double r = 2.0;
  bool homogeneous = false;

  double r_prime() const { return r / (r - 1.0); }
  /// Throws std::invalid_argument unless 1 < r <= 2.
  void validate() const;
  NormSpec with_s(double s_new) const {
    NormSpec c = *this;
    c.s = s_new;
    return c;
  }
};

/// (dxi^2 sum <xi>^{s r'} |f^|^{r'})^{1/r'} over a spatial spectral field.
double fl_norm(const SpectralField& f, const NormSpec& spec);

/// (dtau dxi^2 sum <xi>^{s r'} <|tau|-|xi|>^{b r'} |u~|^{r'})^{1/r'}.
double xsb_norm(const SpectralField& u, const NormSpec& spec);

/// ||u||_{X_{s,b}} + ||d_t u||_{X_{s-1,b}} with d_t u = i tau u~.
double z_norm(const SpectralField& u, const NormSpec& spec);
/// Same, with a caller-supplied time derivative.
double z_norm(const SpectralField& u, const SpectralField& ut, const NormSpec& spec);

/// Sobolev index sigma with the same scaling as the homogeneous
/// Fourier-Lebesgue space of index (s, r) in dimension n.
double scaling_correspondence(double s, double r, int n);
/// Scaling-critical regularity n/r.
double critical_exponent(double r, int n);

struct ScalingCheck {
  double measured = 1.0;   // ||f_lambda|| / ||f||
  double predicted = 1.0;  // lambda^{s - n/r}
};

/// Compares the homogeneous norm of f(lambda x) on the grid (L/lambda, N) with
/// that of f on (L, N). f is evaluated at minimum-image coordinates, so it
/// should be localised well inside the torus. lambda must be a power of two.
ScalingCheck scaling_check(const std::function<double(double, double)>& f, double lambda, const NormSpec& spec,
                           const SpacetimeGrid& grid);

/// Samples f at minimum-image coordinates of the spatial grid.
PhysicalField sample_centered(const SpacetimeGrid& grid, const std::function<cplx(double, double)>& f);

}  // namespace nullwave
