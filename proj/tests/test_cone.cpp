#include "doctest.h"
#include "nullwave/cone.hpp"

using namespace nullwave;

namespace {

ConeIntegralSpec spec(ConeRegime regime, double xi, double tau, double r = 2.0, bool first = false) {
  ConeIntegralSpec s;
  s.regime = regime;
  s.kind = NullFormKind::q12;
  s.xi = xi;
  s.tau = tau;
  s.r = r;
  s.s1 = first ? 1.0 / r : 0.0;
  s.s2 = first ? 0.0 : 1.0 / r;
  return s;
}

}  // namespace

TEST_CASE("mollified lattice quadrature reproduces the ellipse and hyperbola measures") {
  // elliptic coordinates a + b = c cosh(mu), a - b = c cos(nu), area element
  // (c^2/4)(cosh^2 mu - cos^2 nu) dmu dnu
  const double c = 2.0, tau = 3.0;
  const double ellipse = pi * (2.0 * tau * tau - c * c) / (4.0 * std::sqrt(tau * tau - c * c));
  const auto e = mollified_level_set_integral({true, c, tau}, [](double, double) { return 1.0; }, {0.08, 0.04, 0.02});
  CHECK(e.value == doctest::Approx(ellipse).epsilon(1e-5));

  const double th = 0.8, mu2 = std::acosh(3.0);
  const double k = th / c;
  const double hyperbola =
      (c / 2.0) / std::sqrt(1.0 - k * k) * (mu2 / 2.0 + std::sinh(2.0 * mu2) / 4.0 - k * k * mu2);
  const auto h =
      mollified_level_set_integral({false, c, th, c, 3.0 * c}, [](double, double) { return 1.0; }, {0.08, 0.04, 0.02});
  CHECK(h.value == doctest::Approx(hyperbola).epsilon(1e-4));
}

TEST_CASE("cone integral agrees with the mollified oracle") {
  const ConeIntegralSpec cases[] = {spec(ConeRegime::elliptic, 2.0, 3.0), spec(ConeRegime::elliptic, 1.0, 1.5, 1.5, true),
                                    spec(ConeRegime::hyperbolic_low, 2.0, 0.7, 1.25),
                                    spec(ConeRegime::hyperbolic_low, 2.0, -1.1, 2.0, true)};
  for (const auto& s : cases) {
    const double gap = s.regime == ConeRegime::elliptic ? s.tau - s.xi : s.xi - std::abs(s.tau);
    const double e0 = 0.04 * std::min(s.xi, gap);
    const auto q = cone_integral(s);
    const auto o = mollified_oracle(s, {e0, e0 / 2.0, e0 / 4.0});
    CAPTURE(to_string(s.regime));
    CHECK(q.value == doctest::Approx(o.value).epsilon(1e-4));
    CHECK(q.error < 1e-8 * q.value);
  }
  auto high = spec(ConeRegime::hyperbolic_high, 2.0, 0.7, 1.5);
  high.outer_cutoff = 6.0;
  CHECK(cone_integral(high).value == doctest::Approx(mollified_oracle(high, {0.02, 0.01, 0.005}).value).epsilon(1e-4));
}

TEST_CASE("bound-mode cone integrals are dilation invariant") {
  for (auto regime : {ConeRegime::elliptic, ConeRegime::hyperbolic_low, ConeRegime::hyperbolic_high})
    for (double r : {1.25, 2.0}) {
      const double tau = regime == ConeRegime::elliptic ? 1.7 : 0.4;
      const double a = cone_integral(spec(regime, 1.0, tau, r)).value;
      const double b = cone_integral(spec(regime, 8.0, 8.0 * tau, r)).value;
      CHECK(b == doctest::Approx(a).epsilon(1e-8));
    }
}

TEST_CASE("elliptic integral near the degenerate ellipse") {
  // With the 1/|xi - eta| weight the mass concentrates at the focus: in elliptic
  // coordinates I -> 2^{r/2} int (1 + w^2)^{-r/2} dw as tau decreases to |xi|,
  // while the segment tau = |xi| itself carries I = 0.
  const double xi = 3.0;
  for (double r : {1.5, 2.0}) {
    const double limit = std::pow(2.0, r / 2.0) * std::sqrt(pi) * std::tgamma((r - 1.0) / 2.0) / std::tgamma(r / 2.0);
    double prev = 0.0;
    for (double e : {1e-1, 1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
      const double v = cone_integral(spec(ConeRegime::elliptic, xi, xi * (1.0 + e), r)).value;
      CHECK(std::abs(v - limit) < std::abs(prev - limit) + 1e-6 * limit);
      prev = v;
    }
    CAPTURE(r);
    CHECK(prev == doctest::Approx(limit).epsilon(1e-2));
    CHECK(cone_integral(spec(ConeRegime::elliptic, xi, xi, r)).value == 0.0);
  }
}

TEST_CASE("weights on either factor give the same elliptic integral") {
  CHECK(cone_integral(spec(ConeRegime::elliptic, 1.0, 2.5, 1.5, true)).value ==
        doctest::Approx(cone_integral(spec(ConeRegime::elliptic, 1.0, 2.5, 1.5, false)).value).epsilon(1e-10));
}

TEST_CASE("tail integral") {
  CHECK(tail_integral([](double x) { return std::pow(x, -3.0); }, 2.0, 3.0).value == doctest::Approx(0.125).epsilon(1e-10));
  CHECK(tail_integral([](double x) { return 1.0 / (1.0 + x * x); }, 1.0, 2.0).value ==
        doctest::Approx(pi / 4.0).epsilon(1e-10));
}

TEST_CASE("cone spec validation") {
  auto s = spec(ConeRegime::elliptic, 2.0, 1.0);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = spec(ConeRegime::hyperbolic_low, 2.0, 2.0);
  CHECK_THROWS_AS(cone_integral(s), std::invalid_argument);
  s = spec(ConeRegime::elliptic, 2.0, 3.0, 2.5);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = spec(ConeRegime::elliptic, 2.0, 3.0);
  s.s1 = 0.2;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = spec(ConeRegime::elliptic, 2.0, 3.0);
  s.kind = NullFormKind::generic;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.exact_symbol = true;
  CHECK_NOTHROW(s.validate());
  CHECK(parse_cone_regime("hyperbolic-low") == ConeRegime::hyperbolic_low);
  CHECK_THROWS_AS(parse_cone_regime("parabolic"), std::invalid_argument);
}

TEST_CASE("exact on-cone symbol never exceeds the bound by more than a constant") {
  for (auto regime : {ConeRegime::elliptic, ConeRegime::hyperbolic_low}) {
    auto s = spec(regime, 2.0, regime == ConeRegime::elliptic ? 3.0 : 0.9, 1.5);
    const double bound = cone_integral(s).value;
    s.exact_symbol = true;
    const double exact = cone_integral(s).value;
    CHECK(exact > 0.0);
    CHECK(exact <= std::pow(4.0, s.r) * bound);
  }
}

TEST_CASE("scan reports are worker-count independent") {
  const auto samples = default_scan_samples(ConeRegime::hyperbolic_low, 5, 3);
  CHECK(samples.size() == 15);
  const auto a = uniform_bound_scan(ConeRegime::hyperbolic_low, NullFormKind::q0, 1.5, false, samples, 1, 1);
  const auto b = uniform_bound_scan(ConeRegime::hyperbolic_low, NullFormKind::q0, 1.5, false, samples, 1, 3);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].value == b.points[i].value);
  CHECK(a.stable());
  CHECK(a.scale_xi.size() == 5);
}
