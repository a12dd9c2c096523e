#pragma once

#include <vector>

#include "nullwave/norms.hpp"
#include "nullwave/propagator.hpp"
#include "nullwave/solver.hpp"

namespace nullwave {

struct PicardOptions {
  int iterations = 6;
  NormSpec norm{1.8, 0.9, 1.25};  // Z^r_{s,b} norm used for the trace
  AssemblyOptions assembly;       // T, b, eps, r of the solution operator
  double divergence_limit = 1e12; // stop once an iterate norm exceeds this

  void validate() const;
};

/// Norms of the iterates u^0, u^1, ... and of their successive differences
/// in the ambient Z norm of the assembled space-time extensions.
struct IterationTrace {
  double T = 0.0;
  std::vector<double> norms;        // ||u^k||, k = 0..K
  std::vector<double> differences;  // ||u^{k+1} - u^k||, k = 0..K-1
  /// differences[k+1] / differences[k]; NaN when differences[k] is zero or
  /// below 1e-12 of the iterate norm.
  std::vector<double> ratios;
  bool diverged = false;

  /// Every defined ratio from index `from` on is below `threshold`, and at
  /// least one is defined.
  bool contracting(double threshold = 0.5, std::size_t from = 1) const;
};

struct PicardResult {
  IterationTrace trace;
  std::vector<PhysicalField> solution;  // last iterate, one space-time field per component
};

/// u^0 = assembled free solution; u^{k+1} = assemble(f, g, N(u^k)) with N the
/// system's space-time null-form sources. grid is the space-time grid.
PicardResult picard_iterate(const NlwSystem& system, const CauchyData& data, const SpacetimeGrid& grid,
                            const PicardOptions& options);

}  // namespace nullwave
