#include "nullwave/picard.hpp"

#include <cmath>
#include <limits>

#include "nullwave/fft.hpp"

namespace nullwave {

void PicardOptions::validate() const {
  if (iterations < 1) throw std::invalid_argument("picard: need at least one iteration");
  norm.validate();
  assembly.validate();
  if (!(assembly.T > 0.0 && assembly.T < 1.0)) throw std::invalid_argument("picard: T must lie in (0, 1)");
}

bool IterationTrace::contracting(double threshold, std::size_t from) const {
  if (diverged) return false;
  bool any = false;
  for (std::size_t k = from; k < ratios.size(); ++k) {
    if (std::isnan(ratios[k])) continue;
    if (!(ratios[k] < threshold)) return false;
    any = true;
  }
  return any;
}

PicardResult picard_iterate(const NlwSystem& system, const CauchyData& data, const SpacetimeGrid& grid,
                            const PicardOptions& options) {
  system.validate();
  data.validate(system.components);
  options.validate();
  if (data.f.front().grid.n != grid.n || data.f.front().grid.length != grid.length)
    throw std::invalid_argument("picard: data grid differs from the space-time grid");
  const int m = system.components;

  auto assemble = [&](const std::vector<PhysicalField>& forcing) {
    std::vector<PhysicalField> out;
    for (int c = 0; c < m; ++c) {
      SpectralField f(grid, Extent::spatial), g(grid, Extent::spatial);
      f.values = data.f[c].values;
      g.values = data.g[c].values;
      out.push_back(assemble_linear_solution(f, g, forcing[c], options.assembly).u);
    }
    return out;
  };
  auto sources = [&](const std::vector<PhysicalField>& u) {
    std::vector<PhysicalField> out(m, PhysicalField(grid, Extent::spacetime));
    for (const auto& t : system.terms) out[t.target] += null_form(t.kind, u[t.left], u[t.right]);
    return out;
  };
  auto z = [&](const std::vector<PhysicalField>& u) {
    double acc = 0.0;
    for (const auto& c : u) acc += std::pow(z_norm(transform(c), options.norm), 2.0);
    return std::sqrt(acc);
  };

  PicardResult res;
  res.trace.T = options.assembly.T;
  auto u = assemble(std::vector<PhysicalField>(m, PhysicalField()));
  res.trace.norms.push_back(z(u));
  for (int k = 0; k < options.iterations; ++k) {
    auto next = assemble(sources(u));
    std::vector<PhysicalField> diff;
    for (int c = 0; c < m; ++c) diff.push_back(next[c] - u[c]);
    const double nz = z(next), dz = z(diff);
    u = std::move(next);
    res.trace.norms.push_back(nz);
    res.trace.differences.push_back(dz);
    if (!std::isfinite(nz) || nz > options.divergence_limit) {
      res.trace.diverged = true;
      break;
    }
  }
  // ratios of differences at round-off level carry no information
  const auto& d = res.trace.differences;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    const bool resolved = d[k] > 1e-12 * res.trace.norms[k + 1] && d[k] > 0.0;
    res.trace.ratios.push_back(resolved ? d[k + 1] / d[k] : std::numeric_limits<double>::quiet_NaN());
  }
  res.solution = std::move(u);
  return res;
}

}  // namespace nullwave
