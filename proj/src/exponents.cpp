#include "nullwave/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nullwave {

double epsilon_upper_bound(double r) {
  if (!(r > 1.0 && r <= 2.0)) throw std::invalid_argument("exponent_feasibility: r must lie in (1, 2]");
  if (r == 2.0) return std::numeric_limits<double>::infinity();
  const double d = r - 1.0;
  return 2.0 * (1.0 + d) / (1.0 - d) - 2.0 * (1.0 + d);
}

ExponentTuple exponent_feasibility(double r) {
  ExponentTuple t;
  t.r = r;
  t.eps_upper = epsilon_upper_bound(r);
  t.r_prime = r / (r - 1.0);
  t.eps = std::isinf(t.eps_upper) ? 1.0 : 0.5 * (t.eps_lower + t.eps_upper);
  const double inv_rp = 1.0 - 1.0 / r;
  t.l = 2.0 * r + t.eps;
  const double inv_m = 1.0 / r - 1.0 / t.l;
  t.m = 1.0 / inv_m;
  t.p = 1.0 / (inv_rp + inv_m);
  t.q = 1.0 / (inv_rp + 1.0 / t.l);
  t.young_residual = std::abs(inv_rp + 1.0 - (1.0 / t.p + 1.0 / t.q));
  t.holder_residual =
      std::max(std::abs(1.0 / t.p - inv_rp - 1.0 / t.m), std::abs(1.0 / t.q - inv_rp - 1.0 / t.l));
  return t;
}

}  // namespace nullwave
