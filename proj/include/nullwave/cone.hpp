#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nullwave/nullforms.hpp"

namespace nullwave {

/// Interaction geometry of the cone surface integrals. With a = |eta|,
/// b = |xi - eta|, c = |xi|:
///   elliptic:        a + b = tau  (tau >= c)
///   hyperbolic_low:  a - b = tau, |tau| < c, a + b <= 2c
///   hyperbolic_high: a - b = tau, |tau| < c, a + b >  2c
enum class ConeRegime { elliptic, hyperbolic_low, hyperbolic_high };

std::string to_string(ConeRegime regime);
ConeRegime parse_cone_regime(const std::string& name);

struct ConeIntegralSpec {
  ConeRegime regime = ConeRegime::elliptic;
  NullFormKind kind = NullFormKind::q12;
  double xi = 1.0;   // |xi|; the integral is rotation invariant
  double tau = 2.0;
  double s1 = 0.0;   // weight |eta|^{-s1 r}
  double s2 = 0.5;   // weight |xi - eta|^{-s2 r}
  double r = 2.0;
  /// Optional truncation a + b <= outer_cutoff * c (hyperbolic_high only).
  double outer_cutoff = std::numeric_limits<double>::infinity();
  /// Use |q|^r of the actual on-cone symbol instead of the bound^r.
  bool exact_symbol = false;

  /// Checks the regime geometry, r in (1, 2] and (s1, s2) in {(0, 1/r), (1/r, 0)}.
  void validate() const;
};

/// Integrand of I in terms of the focal distances:
///   W(a, b)^r a^{-s1 r} b^{-s2 r},
/// with W the symbol bound (or the on-cone |q| when exact_symbol is set).
double cone_integrand(const ConeIntegralSpec& spec, double a, double b);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// I via the one-dimensional reduction of the delta measure on the ellipse
/// or hyperbola branch, using confocal coordinates (endpoint square-root
/// singularities removed by trigonometric / hyperbolic substitutions, the
/// infinite tail of the high-frequency case by a power-law substitution).
QuadratureResult cone_integral(const ConeIntegralSpec& spec);

/// int_lower^inf f(x) dx for f decaying like x^{-decay}, decay > 1, through
/// x = lower * u^{-1/(decay-1)}, which leaves a bounded integrand on (0, 1].
QuadratureResult tail_integral(const std::function<double(double)>& f, double lower, double decay);

/// Level set P(eta) = tau in the plane with foci 0 and (c, 0): P = a + b
/// (elliptic) or P = a - b (hyperbolic), restricted to s_min < a + b <= s_max.
struct LevelSet {
  bool elliptic = true;
  double c = 1.0;
  double tau = 2.0;
  double s_min = 0.0;
  double s_max = std::numeric_limits<double>::infinity();
};

/// Brute-force 2D lattice quadrature of int delta_eps(tau - P(eta)) g(a, b) deta
/// with the triangular mollifier delta_eps, lattice step eps/lattice_ratio, then
/// Richardson extrapolation eps -> 0 over the (halving) eps list.
QuadratureResult mollified_level_set_integral(const LevelSet& set, const std::function<double(double, double)>& g,
                                              const std::vector<double>& eps_list, double lattice_ratio = 32.0);

/// mollified_level_set_integral applied to the cone integrand of spec.
/// hyperbolic_high needs a finite outer_cutoff here.
QuadratureResult mollified_oracle(const ConeIntegralSpec& spec, const std::vector<double>& eps_list,
                                  double lattice_ratio = 32.0);

struct ScanPoint {
  double xi = 0.0;
  double tau = 0.0;
  double value = 0.0;
  double error = 0.0;
};

/// Result table of a cone-integral scan.
struct ScanReport {
  std::string description;
  ConeRegime regime = ConeRegime::elliptic;
  NullFormKind kind = NullFormKind::q12;
  double r = 2.0, s1 = 0.0, s2 = 0.5;
  std::uint64_t seed = 0;
  std::vector<ScanPoint> points;
  double sup = 0.0;
  std::size_t argmax = 0;
  std::vector<double> scale_sup;      // sup per dyadic |xi| scale
  std::vector<double> scale_xi;       // the scales
  std::vector<double> oracle_errors;  // relative |closed form - oracle| on checked points
  double wall_seconds = 0.0;

  /// Finite sup and per-scale sups non-increasing up to rel_tol.
  bool stable(double rel_tol = 1e-6) const;
};

/// Samples for a scan: |xi| on a log grid over [2^-2, 2^6] (n_scales points)
/// and, per scale, tau at fixed ratios tau/|xi| appropriate to the regime.
std::vector<std::pair<double, double>> default_scan_samples(ConeRegime regime, int n_scales, int n_ratios);

/// Evaluates I at every (|xi|, tau) sample. When oracle_every > 0, every
/// oracle_every-th point is cross-checked against the mollified oracle.
/// The seed is only recorded; the scan itself is deterministic.
ScanReport uniform_bound_scan(ConeRegime regime, NullFormKind kind, double r, bool weight_on_first,
                              const std::vector<std::pair<double, double>>& samples, std::uint64_t seed, int jobs = 1,
                              int oracle_every = 0);

}  // namespace nullwave
