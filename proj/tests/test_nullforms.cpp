#include <random>

#include "doctest.h"
#include "nullwave/fft.hpp"
#include "nullwave/nullforms.hpp"
#include "support.hpp"

using namespace nullwave;

TEST_CASE("physical null forms of two travelling waves") {
  // f = cos(A), g = sin(B), A = x1 + 2 x2 + t, B = 3 x1 - x2 + 2 t; every form
  // equals k sin(A) cos(B) with k from the derivatives by hand.
  const auto g = make_grid(2.0 * pi, 32, pi, 32);
  PhysicalField f(g, Extent::spacetime), h(g, Extent::spacetime), base(g, Extent::spacetime);
  for (int j = 0; j < g.n_time; ++j)
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        const double A = g.x(a) + 2.0 * g.x(b) + g.t(j), B = 3.0 * g.x(a) - g.x(b) + 2.0 * g.t(j);
        f(j, a, b) = std::cos(A);
        h(j, a, b) = std::sin(B);
        base(j, a, b) = std::sin(A) * std::cos(B);
      }
  const std::pair<NullFormKind, double> expected[] = {{NullFormKind::q0, -1.0},
                                                      {NullFormKind::q12, 7.0},
                                                      {NullFormKind::q01, -1.0},
                                                      {NullFormKind::q02, 5.0},
                                                      {NullFormKind::generic, -3.0}};
  for (const auto& [kind, k] : expected) {
    const auto q = null_form(kind, f, h);
    double err = 0.0;
    for (std::size_t i = 0; i < q.values.size(); ++i) err = std::max(err, std::abs(q.values[i] - k * base.values[i]));
    CAPTURE(to_string(kind));
    CHECK(err < 1e-11);
  }
}

TEST_CASE("null symbols vanish on parallel null frequencies, the generic one does not") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int it = 0; it < 200; ++it) {
    const Vec2 eta{u(gen), u(gen)};
    const double lam = u(gen);
    const Vec2 zeta{lam * eta[0], lam * eta[1]};
    const double alpha = std::hypot(eta[0], eta[1]), beta = lam * alpha;
    for (auto kind : {NullFormKind::q0, NullFormKind::q12, NullFormKind::q01, NullFormKind::q02})
      CHECK(std::abs(null_symbol(kind, alpha, eta, beta, zeta)) < 1e-12 * (1.0 + alpha * alpha * lam * lam));
    CHECK(std::abs(null_symbol(NullFormKind::generic, alpha, eta, beta, zeta)) ==
          doctest::Approx(2.0 * std::abs(lam) * alpha * alpha));
  }
}

TEST_CASE("antisymmetry") {
  CHECK(is_antisymmetric(NullFormKind::q12));
  CHECK(is_antisymmetric(NullFormKind::q01));
  CHECK(is_antisymmetric(NullFormKind::q02));
  CHECK_FALSE(is_antisymmetric(NullFormKind::q0));
  CHECK_FALSE(is_antisymmetric(NullFormKind::generic));
  const Vec2 eta{1.0, 2.0}, zeta{-0.5, 3.0};
  for (auto kind : {NullFormKind::q12, NullFormKind::q01, NullFormKind::q02})
    CHECK(null_symbol(kind, 0.7, eta, -1.3, zeta) == doctest::Approx(-null_symbol(kind, -1.3, zeta, 0.7, eta)));
}

TEST_CASE("on-cone symbols are dominated by the angular bounds") {
  // independent sampler: log-uniform magnitudes, uniform angles
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * pi), lg(-4.0, 4.0);
  for (auto kind : {NullFormKind::q0, NullFormKind::q12, NullFormKind::q01, NullFormKind::q02})
    for (auto regime : {Regime::elliptic, Regime::hyperbolic}) {
      double worst = 0.0;
      for (int it = 0; it < 20000; ++it) {
        const double a = std::exp(lg(gen)), b = std::exp(lg(gen)), p = ang(gen), q = ang(gen);
        const Vec2 eta{a * std::cos(p), a * std::sin(p)}, zeta{b * std::cos(q), b * std::sin(q)};
        const double beta = regime == Regime::elliptic ? b : -b;
        const double m = std::abs(normalized_symbol(kind, a, eta, beta, zeta));
        const double bound = symbol_bound(kind, regime, eta, {eta[0] + zeta[0], eta[1] + zeta[1]});
        if (bound <= 1e-9) continue;
        worst = std::max(worst, m / bound);
      }
      CAPTURE(to_string(kind));
      CHECK(worst <= 4.0);
      CHECK(worst > 0.5);  // the bound is not vacuous
    }
}

TEST_CASE("dominance scan is seeded and worker-count independent") {
  const auto a = symbol_dominance_scan(NullFormKind::q12, Regime::hyperbolic, 5000, 9, 1);
  const auto b = symbol_dominance_scan(NullFormKind::q12, Regime::hyperbolic, 5000, 9, 3);
  CHECK(a.c_emp == b.c_emp);
  CHECK(a.violations == 0);
  CHECK(a.c_emp <= 4.0);
  const auto c = symbol_dominance_scan(NullFormKind::q12, Regime::hyperbolic, 5000, 10, 1);
  CHECK(c.c_emp != a.c_emp);
}

TEST_CASE("kind names round trip") {
  for (auto kind : {NullFormKind::q0, NullFormKind::q12, NullFormKind::q01, NullFormKind::q02, NullFormKind::generic})
    CHECK(parse_null_form(to_string(kind)) == kind);
  CHECK_THROWS_AS(parse_null_form("q3"), std::invalid_argument);
}
