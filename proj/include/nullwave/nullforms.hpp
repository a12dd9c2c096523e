#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "nullwave/grid.hpp"

namespace nullwave {

using Vec2 = std::array<double, 2>;

/// Classical null forms in 2+1 dimensions plus the non-null control
/// d_t f d_t g + grad f . grad g.
enum class NullFormKind { q0, q12, q01, q02, generic };

std::string_view to_string(NullFormKind kind);
/// Accepts "q0", "q12", "q01", "q02", "generic" (case-insensitive).
NullFormKind parse_null_form(std::string_view name);
bool is_antisymmetric(NullFormKind kind);

/// Physical-space samples of (d_t f, d_1 f, d_2 f).
struct Gradient {
  PhysicalField dt, d1, d2;
};

/// Pointwise bilinear expression of the null form in terms of gradients.
PhysicalField combine(NullFormKind kind, const Gradient& f, const Gradient& g);

/// Spectral space-time gradient of a space-time field, 2/3-truncated.
Gradient spacetime_gradient(const SpectralField& f);

/// Null form of two space-time fields. Derivatives are spectral, the product
/// is formed in physical space with 2/3-rule truncation of inputs and output.
PhysicalField null_form(NullFormKind kind, const PhysicalField& f, const PhysicalField& g);

/// w * Q(u, v) with the same truncation applied to w and to the output.
PhysicalField trilinear_term(const PhysicalField& w, const PhysicalField& u, const PhysicalField& v,
                             NullFormKind kind);

/// Reduced symbol m of the null form on covectors (alpha, eta), (beta, zeta):
///   Q0  -> -alpha beta + eta.zeta
///   Q12 -> eta_1 zeta_2 - eta_2 zeta_1
///   Q0j -> alpha zeta_j - eta_j beta
///   generic -> alpha beta + eta.zeta
double null_symbol(NullFormKind kind, double alpha, Vec2 eta, double beta, Vec2 zeta);

/// Sign s with (Fourier multiplier of the physical operator) = s * m.
double symbol_sign(NullFormKind kind);

/// m / (|eta| |zeta|). Throws when either spatial frequency vanishes.
double normalized_symbol(NullFormKind kind, double alpha, Vec2 eta, double beta, Vec2 zeta);

enum class Regime { elliptic, hyperbolic };

/// Right-hand side of the pointwise bound on |m|/(|eta||xi-eta|) in terms of
/// a = |eta|, b = |xi - eta| and c = |xi|.
double symbol_bound(NullFormKind kind, Regime regime, double a, double b, double c);
double symbol_bound(NullFormKind kind, Regime regime, Vec2 eta, Vec2 xi);

struct DominanceReport {
  NullFormKind kind;
  Regime regime;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double c_emp = 0.0;           // max |q| / bound over samples with bound > 0
  Vec2 worst_eta{}, worst_zeta{};
  std::size_t zero_bound = 0;    // samples where the bound vanished
  std::size_t violations = 0;    // bound == 0 but |q| > 1e-12
};

/// Samples on-cone interactions (alpha = |eta|, beta = +-|zeta| by regime)
/// with |eta|, |zeta| log-uniform in [1/8, 8] and uniform directions.
DominanceReport symbol_dominance_scan(NullFormKind kind, Regime regime, std::size_t samples, std::uint64_t seed,
                                      int jobs = 1);

}  // namespace nullwave
