#pragma once

#include <string>

namespace nullwave {

/// Hoelder/Young exponents for the multiplicative embedding at index r.
/// With l = 2r + eps:
///   1/m = 1/r - 1/l,   1/p = 1/r' + 1/m,   1/q = 1/r' + 1/l,
/// so that 1/r' + 1 = 1/p + 1/q. Feasibility needs m > 2 and l > 2r.
struct ExponentTuple {
  double r = 2.0;
  double r_prime = 2.0;
  double eps_lower = 0.0;
  double eps_upper = 0.0;  // +inf when every eps > 0 is admissible
  double eps = 0.0;        // the witness: interval midpoint, or 1 when unbounded
  double l = 0.0, m = 0.0, p = 0.0, q = 0.0;
  double young_residual = 0.0;   // |1/r' + 1 - 1/p - 1/q|
  double holder_residual = 0.0;  // max of |1/p - 1/r' - 1/m|, |1/q - 1/r' - 1/l|

  bool feasible() const { return m > 2.0 && l > 2.0 * r; }
};

/// Upper end of the admissible eps interval, 2(1+d)/(1-d) - 2(1+d) for
/// r = 1 + d < 2, and +inf at r = 2. Throws outside (1, 2].
double epsilon_upper_bound(double r);

ExponentTuple exponent_feasibility(double r);

}  // namespace nullwave
