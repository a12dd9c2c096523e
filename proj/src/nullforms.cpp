#include "nullwave/nullforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "nullwave/fft.hpp"
#include "nullwave/multiplier.hpp"
#include "nullwave/parallel.hpp"
#include "nullwave/rng.hpp"

namespace nullwave {

std::string_view to_string(NullFormKind kind) {
  switch (kind) {
    case NullFormKind::q0: return "q0";
    case NullFormKind::q12: return "q12";
    case NullFormKind::q01: return "q01";
    case NullFormKind::q02: return "q02";
    case NullFormKind::generic: return "generic";
  }
  return "?";
}

NullFormKind parse_null_form(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "q0") return NullFormKind::q0;
  if (s == "q12") return NullFormKind::q12;
  if (s == "q01") return NullFormKind::q01;
  if (s == "q02") return NullFormKind::q02;
  if (s == "generic" || s == "genericproduct") return NullFormKind::generic;
  throw std::invalid_argument("unknown null form '" + s + "'");
}

bool is_antisymmetric(NullFormKind kind) {
  return kind == NullFormKind::q12 || kind == NullFormKind::q01 || kind == NullFormKind::q02;
}

PhysicalField combine(NullFormKind kind, const Gradient& f, const Gradient& g) {
  PhysicalField out(f.dt.grid, f.dt.extent);
  out.require_compatible(g.dt);
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const cplx ft = f.dt.values[k], f1 = f.d1.values[k], f2 = f.d2.values[k];
    const cplx gt = g.dt.values[k], g1 = g.d1.values[k], g2 = g.d2.values[k];
    switch (kind) {
      case NullFormKind::q0: out.values[k] = ft * gt - f1 * g1 - f2 * g2; break;
      case NullFormKind::q12: out.values[k] = f1 * g2 - f2 * g1; break;
      case NullFormKind::q01: out.values[k] = ft * g1 - f1 * gt; break;
      case NullFormKind::q02: out.values[k] = ft * g2 - f2 * gt; break;
      case NullFormKind::generic: out.values[k] = ft * gt + f1 * g1 + f2 * g2; break;
    }
  }
  return out;
}

Gradient spacetime_gradient(const SpectralField& f) {
  if (f.extent != Extent::spacetime) throw std::invalid_argument("spacetime_gradient needs a space-time field");
  auto part = [&](const MultiplierSpec& m) {
    auto d = apply_multiplier(f, m);
    dealias(d);
    return inverse_transform(d);
  };
  return {part(MultiplierSpec::time_derivative()), part(MultiplierSpec::spatial_derivative(0)),
          part(MultiplierSpec::spatial_derivative(1))};
}

namespace {

PhysicalField truncate(const PhysicalField& f) {
  auto s = transform(f);
  dealias(s);
  return inverse_transform(s);
}

}  // namespace

PhysicalField null_form(NullFormKind kind, const PhysicalField& f, const PhysicalField& g) {
  f.require_compatible(g);
  if (f.extent != Extent::spacetime) throw std::invalid_argument("null_form needs space-time fields");
  return truncate(combine(kind, spacetime_gradient(transform(f)), spacetime_gradient(transform(g))));
}

PhysicalField trilinear_term(const PhysicalField& w, const PhysicalField& u, const PhysicalField& v,
                             NullFormKind kind) {
  w.require_compatible(u);
  const auto q = null_form(kind, u, v);
  auto wt = truncate(w);
  for (std::size_t k = 0; k < wt.values.size(); ++k) wt.values[k] *= q.values[k];
  return truncate(wt);
}

double null_symbol(NullFormKind kind, double alpha, Vec2 eta, double beta, Vec2 zeta) {
  switch (kind) {
    case NullFormKind::q0: return -alpha * beta + eta[0] * zeta[0] + eta[1] * zeta[1];
    case NullFormKind::q12: return eta[0] * zeta[1] - eta[1] * zeta[0];
    case NullFormKind::q01: return alpha * zeta[0] - eta[0] * beta;
    case NullFormKind::q02: return alpha * zeta[1] - eta[1] * beta;
    case NullFormKind::generic: return alpha * beta + eta[0] * zeta[0] + eta[1] * zeta[1];
  }
  return 0.0;
}

double symbol_sign(NullFormKind kind) { return kind == NullFormKind::q0 ? 1.0 : -1.0; }

double normalized_symbol(NullFormKind kind, double alpha, Vec2 eta, double beta, Vec2 zeta) {
  const double den = std::hypot(eta[0], eta[1]) * std::hypot(zeta[0], zeta[1]);
  if (den == 0.0) throw std::invalid_argument("normalized_symbol: zero spatial frequency");
  return null_symbol(kind, alpha, eta, beta, zeta) / den;
}

double symbol_bound(NullFormKind kind, Regime regime, double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("symbol_bound: degenerate denominator");
  // cancellation factors, clamped at 0 against round-off
  const double ell = std::max(0.0, a + b - c);
  const double hyp = std::max(0.0, c - std::abs(a - b));
  const double cancel = regime == Regime::elliptic ? ell : hyp;
  switch (kind) {
    case NullFormKind::q12:
      return std::sqrt(c * cancel / (a * b));
    case NullFormKind::q01:
    case NullFormKind::q02:
      return regime == Regime::elliptic ? std::sqrt((a + b) * ell / (a * b)) : std::sqrt(c * hyp / (a * b));
    case NullFormKind::q0:
      return regime == Regime::elliptic ? (a + b) * ell / (a * b) : c * hyp / (a * b);
    case NullFormKind::generic:
      break;
  }
  throw std::invalid_argument("symbol_bound: the generic product has no null-form bound");
}

double symbol_bound(NullFormKind kind, Regime regime, Vec2 eta, Vec2 xi) {
  const double a = std::hypot(eta[0], eta[1]);
  const double b = std::hypot(xi[0] - eta[0], xi[1] - eta[1]);
  return symbol_bound(kind, regime, a, b, std::hypot(xi[0], xi[1]));
}

DominanceReport symbol_dominance_scan(NullFormKind kind, Regime regime, std::size_t samples, std::uint64_t seed,
                                      int jobs) {
  if (samples == 0) throw std::invalid_argument("symbol_dominance_scan: empty sample set");
  const CounterRng rng(seed);
  struct Sample {
    double ratio = 0.0;
    bool zero = false, violation = false;
    Vec2 eta{}, zeta{};
  };
  std::vector<Sample> out(samples);
  const double lo = std::log(0.125), hi = std::log(8.0);
  parallel_for(samples, jobs, [&](std::size_t i) {
    const double ra = std::exp(lo + (hi - lo) * rng.uniform(i, 0));
    const double rb = std::exp(lo + (hi - lo) * rng.uniform(i, 1));
    const double ta = 2.0 * pi * rng.uniform(i, 2);
    const double tb = 2.0 * pi * rng.uniform(i, 3);
    const Vec2 eta{ra * std::cos(ta), ra * std::sin(ta)};
    const Vec2 zeta{rb * std::cos(tb), rb * std::sin(tb)};
    const Vec2 xi{eta[0] + zeta[0], eta[1] + zeta[1]};
    const double beta = regime == Regime::elliptic ? rb : -rb;
    const double q = std::abs(normalized_symbol(kind, ra, eta, beta, zeta));
    const double bound = symbol_bound(kind, regime, ra, rb, std::hypot(xi[0], xi[1]));
    Sample s;
    s.eta = eta;
    s.zeta = zeta;
    if (bound > 0.0) {
      s.ratio = q / bound;
    } else {
      s.zero = true;
      s.violation = q > 1e-12;
    }
    out[i] = s;
  });
  DominanceReport rep{kind, regime, samples, seed};
  for (const auto& s : out) {
    rep.zero_bound += s.zero;
    rep.violations += s.violation;
    if (s.ratio > rep.c_emp) {
      rep.c_emp = s.ratio;
      rep.worst_eta = s.eta;
      rep.worst_zeta = s.zeta;
    }
  }
  return rep;
}

}  // namespace nullwave
