#pragma once

#include "nullwave/grid.hpp"

namespace nullwave {

// Unitary continuum normalisation on the lattice:
//   spatial    f^(xi)    = dx^2 / (2 pi)          sum_x f(x) e^{-i xi.x}
//   space-time u~(tau,xi) = dt dx^2 / (2 pi)^{3/2} sum_{t,x} u(t,x) e^{-i(tau t + xi.x)}
// so that Riemann-sum L^2 norms agree on both sides (Parseval).

SpectralField transform(const PhysicalField& f);
PhysicalField inverse_transform(const SpectralField& f);

/// Zeroes every mode with |wavenumber| > size/3 along any axis (including the
/// time axis for space-time fields).
void dealias(SpectralField& f);

/// True when the lattice point survives the 2/3 truncation.
bool inside_dealiased_band(int index, int size);

}  // namespace nullwave
