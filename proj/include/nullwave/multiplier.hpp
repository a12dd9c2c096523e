#pragma once

#include <vector>

#include "nullwave/grid.hpp"

namespace nullwave {

/// One elementary Fourier multiplier.
struct MultiplierFactor {
  enum class Kind {
    spatial_bracket,     // <xi>^p
    modulation_bracket,  // <|tau| - |xi|>^p
    d_power,             // |xi|^p, zero at xi = 0 when p != 0
    cos_td,              // cos(t|xi|)
    sin_td_over_d,       // sin(t|xi|)/|xi|, equal to t at xi = 0
    half_wave,           // e^{i sign t |xi|}
    inverse_box,         // 1/(|xi|^2 - tau^2), zero on the lattice cone
    time_derivative,     // i tau
    spatial_derivative,  // i xi_axis
  };
  Kind kind;
  double param = 0.0;  // power, time, or sign*time
  int axis = 0;

  bool needs_time() const {
    return kind == Kind::modulation_bracket || kind == Kind::inverse_box || kind == Kind::time_derivative;
  }
  /// Symbol at a continuum frequency.
  cplx symbol(double tau, double xi1, double xi2) const;
};

/// A product of elementary multipliers, applied left to right.
///
/// Composition concatenates the factor lists, so applying m1 then m2 is
/// bitwise identical to applying compose(m1, m2). The bracket powers add.
class MultiplierSpec {
 public:
  MultiplierSpec() = default;

  static MultiplierSpec identity() { return {}; }
  static MultiplierSpec spatial_bracket(double sigma);
  static MultiplierSpec modulation_bracket(double beta);
  static MultiplierSpec d_power(double p);
  static MultiplierSpec inverse_d() { return d_power(-1.0); }
  static MultiplierSpec cos_td(double t);
  static MultiplierSpec sin_td_over_d(double t);
  static MultiplierSpec half_wave(int sign, double t);
  static MultiplierSpec inverse_box();
  static MultiplierSpec time_derivative();
  static MultiplierSpec spatial_derivative(int axis);

  double sigma() const;
  double beta() const;
  bool needs_time() const;
  const std::vector<MultiplierFactor>& factors() const { return factors_; }

  /// Product of the factor symbols, in application order.
  cplx symbol(double tau, double xi1, double xi2) const;

  friend MultiplierSpec compose(const MultiplierSpec& first, const MultiplierSpec& second);

 private:
  explicit MultiplierSpec(MultiplierFactor f) : factors_{f} {}
  std::vector<MultiplierFactor> factors_;
};

MultiplierSpec compose(const MultiplierSpec& first, const MultiplierSpec& second);

/// Pointwise product of the spectral values with the multiplier symbol.
/// Odd factors (derivatives) vanish on Nyquist lattice lines.
SpectralField apply_multiplier(const SpectralField& u, const MultiplierSpec& m);

}  // namespace nullwave
