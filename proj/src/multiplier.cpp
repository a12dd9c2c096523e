#include "nullwave/multiplier.hpp"

#include <cmath>

namespace nullwave {

using Kind = MultiplierFactor::Kind;

cplx MultiplierFactor::symbol(double tau, double xi1, double xi2) const {
  const double rho = std::hypot(xi1, xi2);
  switch (kind) {
    case Kind::spatial_bracket:
      return std::pow(bracket(rho), param);
    case Kind::modulation_bracket:
      return std::pow(bracket(std::abs(tau) - rho), param);
    case Kind::d_power:
      if (param == 0.0) return 1.0;
      return rho == 0.0 ? 0.0 : std::pow(rho, param);
    case Kind::cos_td:
      return std::cos(param * rho);
    case Kind::sin_td_over_d:
      return rho == 0.0 ? param : std::sin(param * rho) / rho;
    case Kind::half_wave:
      return std::polar(1.0, param * rho);
    case Kind::inverse_box: {
      const double d = rho * rho - tau * tau;
      return d == 0.0 ? 0.0 : 1.0 / d;
    }
    case Kind::time_derivative:
      return {0.0, tau};
    case Kind::spatial_derivative:
      return {0.0, axis == 0 ? xi1 : xi2};
  }
  return 1.0;
}

MultiplierSpec MultiplierSpec::spatial_bracket(double sigma) { return MultiplierSpec({Kind::spatial_bracket, sigma}); }
MultiplierSpec MultiplierSpec::modulation_bracket(double beta) {
  return MultiplierSpec({Kind::modulation_bracket, beta});
}
MultiplierSpec MultiplierSpec::d_power(double p) { return MultiplierSpec({Kind::d_power, p}); }
MultiplierSpec MultiplierSpec::cos_td(double t) { return MultiplierSpec({Kind::cos_td, t}); }
MultiplierSpec MultiplierSpec::sin_td_over_d(double t) { return MultiplierSpec({Kind::sin_td_over_d, t}); }
MultiplierSpec MultiplierSpec::half_wave(int sign, double t) {
  return MultiplierSpec({Kind::half_wave, sign >= 0 ? t : -t});
}
MultiplierSpec MultiplierSpec::inverse_box() { return MultiplierSpec({Kind::inverse_box, 0.0}); }
MultiplierSpec MultiplierSpec::time_derivative() { return MultiplierSpec({Kind::time_derivative, 0.0}); }
MultiplierSpec MultiplierSpec::spatial_derivative(int axis) {
  if (axis != 0 && axis != 1) throw std::invalid_argument("spatial_derivative: axis must be 0 or 1");
  return MultiplierSpec({Kind::spatial_derivative, 0.0, axis});
}

double MultiplierSpec::sigma() const {
  double s = 0.0;
  for (const auto& f : factors_)
    if (f.kind == Kind::spatial_bracket) s += f.param;
  return s;
}

double MultiplierSpec::beta() const {
  double s = 0.0;
  for (const auto& f : factors_)
    if (f.kind == Kind::modulation_bracket) s += f.param;
  return s;
}

bool MultiplierSpec::needs_time() const {
  for (const auto& f : factors_)
    if (f.needs_time()) return true;
  return false;
}

cplx MultiplierSpec::symbol(double tau, double xi1, double xi2) const {
  cplx s = 1.0;
  for (const auto& f : factors_) s *= f.symbol(tau, xi1, xi2);
  return s;
}

MultiplierSpec compose(const MultiplierSpec& first, const MultiplierSpec& second) {
  MultiplierSpec out = first;
  out.factors_.insert(out.factors_.end(), second.factors_.begin(), second.factors_.end());
  return out;
}

SpectralField apply_multiplier(const SpectralField& u, const MultiplierSpec& m) {
  if (m.needs_time() && u.extent != Extent::spacetime)
    throw std::invalid_argument("apply_multiplier: modulation factors need a space-time field");
  SpectralField out = u;
  const auto& g = u.grid;
  const int nt = u.extent == Extent::spatial ? 1 : g.n_time;
  for (const auto& f : m.factors()) {
    for (int j = 0; j < nt; ++j) {
      const double tau = u.extent == Extent::spatial ? 0.0 : g.tau(j);
      const bool t_nyq = u.extent == Extent::spacetime && j == g.n_time / 2;
      for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
          auto& v = out.values[(static_cast<std::size_t>(j) * g.n + i1) * g.n + i2];
          const bool odd_zero = (f.kind == Kind::time_derivative && t_nyq) ||
                                (f.kind == Kind::spatial_derivative && g.nyquist(f.axis == 0 ? i1 : i2));
          v = odd_zero ? cplx(0.0) : v * f.symbol(tau, g.xi(i1), g.xi(i2));
        }
    }
  }
  return out;
}

}  // namespace nullwave
