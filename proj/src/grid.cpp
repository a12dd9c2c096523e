#include "nullwave/grid.hpp"

#include <atomic>
#include <cmath>
#include <string>

namespace nullwave {

namespace {
std::atomic<BracketKind> g_bracket{BracketKind::linear};
}

void set_bracket_kind(BracketKind kind) { g_bracket.store(kind); }
BracketKind bracket_kind() { return g_bracket.load(); }

double bracket(double magnitude) {
  const double m = std::abs(magnitude);
  return bracket_kind() == BracketKind::linear ? 1.0 + m : std::sqrt(1.0 + m * m);
}

double bracket(double xi1, double xi2) { return bracket(std::hypot(xi1, xi2)); }

double SpacetimeGrid::xi_norm(int i1, int i2) const { return std::hypot(xi(i1), xi(i2)); }

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

SpacetimeGrid make_grid(double length, int n, double time_half_span, int n_time) {
  if (!is_power_of_two(n)) throw std::invalid_argument("spatial size " + std::to_string(n) + " is not a power of two");
  if (!is_power_of_two(n_time))
    throw std::invalid_argument("time size " + std::to_string(n_time) + " is not a power of two");
  if (!(length > 0.0) || !(time_half_span > 0.0)) throw std::invalid_argument("grid extents must be positive");
  return SpacetimeGrid{length, n, time_half_span, n_time};
}

}  // namespace nullwave
