#pragma once

#include <utility>
#include <vector>

#include "nullwave/grid.hpp"
#include "nullwave/norms.hpp"

namespace nullwave {

/// Splits u~ into u_+ (tau >= 0, the tau = 0 plane included) and u_- (tau < 0).
std::pair<SpectralField, SpectralField> split_half_spaces(const SpectralField& u);

/// Decomposition of a space-time field along the cone families
/// tau = rho + |xi| (plus) and tau = rho - |xi| (minus):
///   f_+-(rho)(xi) = (1 + |rho|)^b u~_+-(rho +- |xi|, xi).
/// rho runs over the tau lattice; for each xi the shift |xi|/dtau is rounded
/// half-up to a lattice offset, while the weight uses the exact rho.
struct FoliationData {
  SpacetimeGrid grid;
  double b = 0.0;
  int rho_min = 0;                   // lattice index of slot 0
  std::vector<int> shift;            // per spatial mode, row-major
  std::vector<SpectralField> plus;   // spatial spectral field per rho slot
  std::vector<SpectralField> minus;

  std::size_t slots() const { return plus.size(); }
  double rho(std::size_t slot) const { return (static_cast<int>(slot) + rho_min) * grid.dtau(); }
};

FoliationData foliation_decompose(const SpectralField& u, double b);
SpectralField foliation_reconstruct(const FoliationData& data);

/// (drho sum_rho ||f_+-(rho)||^{r'}_{H^r_s})^{1/r'}; sign selects the family.
double foliation_norm(const FoliationData& data, int sign, const NormSpec& spec);

/// Spatial spectrum of u_+- at time t synthesised from the cone family:
/// (2 pi)^{-1/2} drho sum_rho e^{it(rho +- |xi|)} f_+-(rho)(xi) / (1 + |rho|)^b.
SpectralField foliation_time_slice(const FoliationData& data, int sign, double t);

/// Largest |f^_+(rho)(xi)| with |xi| < -rho (or |f^_-| with |xi| < rho); the
/// support constraints say these vanish up to the shift rounding.
double foliation_support_violation(const FoliationData& data, double slack);

}  // namespace nullwave
