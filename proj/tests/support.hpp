#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "nullwave/fft.hpp"
#include "nullwave/grid.hpp"

namespace testing {

using nullwave::cplx;
using nullwave::Extent;
using nullwave::PhysicalField;
using nullwave::SpacetimeGrid;
using nullwave::SpectralField;

/// Uniform complex samples in the unit square, reproducible from the seed.
template <class Field>
Field random_field(const SpacetimeGrid& g, Extent e, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f(g, e);
  for (auto& v : f.values) v = {u(gen), u(gen)};
  return f;
}

/// Real physical field with spectrum confined to the 2/3 band.
inline PhysicalField band_limited_real(const SpacetimeGrid& g, Extent e, unsigned seed) {
  auto s = nullwave::transform(random_field<PhysicalField>(g, e, seed));
  nullwave::dealias(s);
  auto p = nullwave::inverse_transform(s);
  for (auto& v : p.values) v = v.real();
  return p;
}

inline double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace testing
