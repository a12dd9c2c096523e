#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nullwave {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Choice of frequency weight. `linear` is 1+|xi|, `japanese` is sqrt(1+|xi|^2).
enum class BracketKind { linear, japanese };

void set_bracket_kind(BracketKind kind);
BracketKind bracket_kind();

/// Bracket of a frequency magnitude, <rho>, under the active BracketKind.
double bracket(double magnitude);
/// Bracket of a 2D frequency vector.
double bracket(double xi1, double xi2);

/// Periodic space-time lattice: [0, L)^2 in space, [-T, T) in time.
///
/// Spectral indices are stored in FFT order, so index i carries the integer
/// wavenumber i for i < n/2 and i - n otherwise.
struct SpacetimeGrid {
  double length = 2.0 * pi;
  int n = 16;
  double time_half_span = pi;
  int n_time = 16;

  double dx() const { return length / n; }
  double dxi() const { return 2.0 * pi / length; }
  double dt() const { return 2.0 * time_half_span / n_time; }
  double dtau() const { return pi / time_half_span; }

  double x(int i) const { return i * dx(); }
  double t(int j) const { return -time_half_span + j * dt(); }

  static int wavenumber(int index, int size) { return index < size / 2 ? index : index - size; }
  double xi(int i) const { return dxi() * wavenumber(i, n); }
  double tau(int j) const { return dtau() * wavenumber(j, n_time); }
  /// Index of the negated frequency.
  int negate(int i) const { return (n - i) % n; }
  int negate_time(int j) const { return (n_time - j) % n_time; }
  /// |xi| at lattice point (i1, i2).
  double xi_norm(int i1, int i2) const;
  /// True on the Nyquist row/column, where odd multipliers are zeroed.
  bool nyquist(int i) const { return i == n / 2; }

  std::size_t spatial_size() const { return static_cast<std::size_t>(n) * n; }
  std::size_t spacetime_size() const { return spatial_size() * n_time; }

  bool operator==(const SpacetimeGrid&) const = default;
};

/// Validates sizes (powers of two) and extents (positive) and returns the grid.
SpacetimeGrid make_grid(double length, int n, double time_half_span, int n_time);

bool is_power_of_two(int n);

enum class Extent { spatial, spacetime };

struct PhysicalTag {};
struct SpectralTag {};

/// Complex array over the spatial or space-time lattice, laid out row-major
/// as (t, x1, x2). The tag separates physical samples from spectral values.
template <class Tag>
struct BasicField {
  SpacetimeGrid grid;
  Extent extent = Extent::spatial;
  std::vector<cplx> values;

  BasicField() = default;
  BasicField(const SpacetimeGrid& g, Extent e)
      : grid(g), extent(e), values(e == Extent::spatial ? g.spatial_size() : g.spacetime_size()) {}

  std::size_t index(int i1, int i2) const { return static_cast<std::size_t>(i1) * grid.n + i2; }
  std::size_t index(int j, int i1, int i2) const {
    return (static_cast<std::size_t>(j) * grid.n + i1) * grid.n + i2;
  }
  cplx& operator()(int i1, int i2) { return values[index(i1, i2)]; }
  const cplx& operator()(int i1, int i2) const { return values[index(i1, i2)]; }
  cplx& operator()(int j, int i1, int i2) { return values[index(j, i1, i2)]; }
  const cplx& operator()(int j, int i1, int i2) const { return values[index(j, i1, i2)]; }

  BasicField& operator+=(const BasicField& o) {
    require_compatible(o);
    for (std::size_t k = 0; k < values.size(); ++k) values[k] += o.values[k];
    return *this;
  }
  BasicField& operator-=(const BasicField& o) {
    require_compatible(o);
    for (std::size_t k = 0; k < values.size(); ++k) values[k] -= o.values[k];
    return *this;
  }
  BasicField& operator*=(cplx c) {
    for (auto& v : values) v *= c;
    return *this;
  }
  friend BasicField operator+(BasicField a, const BasicField& b) { return a += b; }
  friend BasicField operator-(BasicField a, const BasicField& b) { return a -= b; }
  friend BasicField operator*(cplx c, BasicField a) { return a *= c; }

  void require_compatible(const BasicField& o) const {
    if (!(grid == o.grid) || extent != o.extent || values.size() != o.values.size())
      throw std::invalid_argument("field grid or extent mismatch");
  }
};

using PhysicalField = BasicField<PhysicalTag>;
using SpectralField = BasicField<SpectralTag>;

/// Largest absolute value.
template <class Tag>
double max_abs(const BasicField<Tag>& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

/// Spatial field at time sample j of a space-time field.
template <class Tag>
BasicField<Tag> time_slice(const BasicField<Tag>& f, int j) {
  if (f.extent != Extent::spacetime) throw std::invalid_argument("time_slice needs a space-time field");
  BasicField<Tag> out(f.grid, Extent::spatial);
  const std::size_t m = f.grid.spatial_size();
  std::copy(f.values.begin() + j * m, f.values.begin() + (j + 1) * m, out.values.begin());
  return out;
}

/// Stacks spatial slices (one per time sample) into a space-time field.
template <class Tag>
BasicField<Tag> stack_slices(const std::vector<BasicField<Tag>>& slices) {
  if (slices.empty()) throw std::invalid_argument("stack_slices: no slices");
  const auto& g = slices.front().grid;
  if (static_cast<int>(slices.size()) != g.n_time)
    throw std::invalid_argument("stack_slices: slice count differs from n_time");
  BasicField<Tag> out(g, Extent::spacetime);
  const std::size_t m = g.spatial_size();
  for (std::size_t j = 0; j < slices.size(); ++j) {
    if (!(slices[j].grid == g) || slices[j].extent != Extent::spatial)
      throw std::invalid_argument("stack_slices: slice grid mismatch");
    std::copy(slices[j].values.begin(), slices[j].values.end(), out.values.begin() + j * m);
  }
  return out;
}

}  // namespace nullwave
