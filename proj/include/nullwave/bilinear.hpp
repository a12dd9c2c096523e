#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nullwave/grid.hpp"
#include "nullwave/nullforms.hpp"

namespace nullwave {

/// Phases of the unit-modulus ensemble spectra: independent per lattice
/// point, or a seeded smooth profile dilated with the annulus.
enum class PhaseMode { iid, smooth };

/// Support inside the dyadic annulus: all of it, or a seeded angular sector
/// of width 2 N^{-1/2}. Both factors share the axis: same direction for equal
/// signs, opposite directions otherwise (the near-cone interactions).
enum class SupportShape { annulus, sector };

struct BilinearConfig {
  NullFormKind kind = NullFormKind::q12;
  int sign_u = +1;
  int sign_v = +1;
  double sigma = 0.6;
  double r = 2.0;
  std::vector<int> scales{4, 8, 16, 32, 64};
  bool diagonal_only = false;  // only N1 == N2
  int grid_n = 128;            // spectral lattice is [-grid_n/2, grid_n/2)^2, unit spacing
  int annulus_members = 1;
  int sector_members = 12;
  PhaseMode phases = PhaseMode::smooth;
  std::uint64_t seed = 0;
  int jobs = 1;

  void validate() const;
};

struct BilinearRow {
  int n1 = 0, n2 = 0;
  double ratio = 0.0;       // max over ensemble members and shapes
  double numerator = 0.0;   // of the maximizing member
  double denominator = 0.0;
  bool skipped = false;     // vanishing data norm
};

struct BilinearTable {
  BilinearConfig config;
  std::vector<BilinearRow> rows;
  double max = 0.0;
  double median = 0.0;
  double max_over_median() const { return median > 0.0 ? max / median : 0.0; }
  /// max/median over the diagonal only.
  double diagonal_max_over_median() const;
  /// Diagonal (N1 == N2) ratios in increasing N.
  std::vector<double> diagonal() const;
  /// True when the diagonal ratios increase strictly with N.
  bool monotone_growth() const;
  /// Least-squares slope of log(ratio) against log(N) on the diagonal.
  double diagonal_slope() const;
  double wall_seconds = 0.0;
};

/// ||<xi>^sigma q(u_su, v_sv)||_{L^r_hat(t,x)} for the free waves with data
/// f0, v0 (spatial spectra). The space-time transform of the product is the
/// measure on tau = su|eta| + sv|xi - eta|, accumulated into tau-bins of the
/// lattice spacing. Returns nullopt when a data norm vanishes.
struct BilinearRatio {
  double numerator = 0.0, denominator = 0.0, ratio = 0.0;
};
std::optional<BilinearRatio> bilinear_ratio(NullFormKind kind, int sign_u, int sign_v, double sigma, double r,
                                            const SpectralField& f0, const SpectralField& v0, int jobs = 1);

/// Unit-modulus spectrum supported in the annulus N/2 <= |xi| < N of the
/// lattice. The sector direction is drawn from (seed, member) so both data
/// of one member share it; phases are drawn from (seed, stream).
SpectralField annulus_data(const SpacetimeGrid& grid, int n, PhaseMode mode, SupportShape shape,
                           std::uint64_t seed, std::uint64_t member, std::uint64_t stream, bool antipodal = false);

/// Ratio table over the dyadic ensemble.
BilinearTable empirical_bilinear_constant(const BilinearConfig& config);

}  // namespace nullwave
