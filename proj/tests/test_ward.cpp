#include "doctest.h"
#include "nullwave/ward.hpp"

#include <Eigen/QR>

using namespace nullwave;

namespace {

WardTrajectory run(const WardState& s, double t_end, double dt, bool project) {
  WardOptions o;
  o.t_end = t_end;
  o.dt = dt;
  o.sample_every = static_cast<int>(std::lround(t_end / dt / 4.0));
  o.project = project;
  return evolve_ward(s, o);
}

}  // namespace

TEST_CASE("identity map is stationary") {
  const auto g = make_grid(2.0 * pi, 16, pi, 2);
  const auto id = ward_identity(g, 2);
  CHECK(unitarity_defect(id) == 0.0);
  const auto tr = run(id, 0.4, 0.01, true);
  CHECK(ward_distance(tr.samples.back(), id) == 0.0);
  for (double d : tr.drift) CHECK(d == 0.0);
}

TEST_CASE("polar factor") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(3, 3);
  const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ();
  const WardMatrix uw = u;
  CHECK((polar_unitary(uw) - uw).norm() < 1e-13);
  CHECK((polar_unitary(WardMatrix(2.5 * uw)) - uw).norm() < 1e-13);
  // a Hermitian positive factor is removed: U P -> U
  Eigen::MatrixXcd p = a.adjoint() * a + Eigen::MatrixXcd::Identity(3, 3);
  const WardMatrix up = u * p;
  const WardMatrix q = polar_unitary(up);
  CHECK((q.adjoint() * q - WardMatrix::Identity(3, 3)).norm() < 1e-13);
  CHECK((q - uw).norm() < 1e-12);
  CHECK_THROWS_AS(polar_unitary(WardMatrix::Zero(2, 2)), std::runtime_error);
}

TEST_CASE("exponential data lies on the group and is tangent") {
  const auto g = make_grid(2.0 * pi, 16, pi, 2);
  for (int n : {1, 2, 3}) {
    const auto s = ward_exponential(g, default_generator(n));
    CHECK(unitarity_defect(s) < 1e-13);
    CHECK(tangency_defect(s) == 0.0);
    CHECK(default_generator(n).adjoint().isApprox(-default_generator(n)));
  }
  CHECK_THROWS_AS(ward_identity(g, 4), std::invalid_argument);
  CHECK_THROWS_AS(ward_exponential(g, Eigen::MatrixXcd::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("projected evolution keeps J unitary") {
  const auto g = make_grid(2.0 * pi, 32, pi, 2);
  const auto s = ward_exponential(g, default_generator(2));
  const auto tr = run(s, 0.2, 1e-3, true);
  double worst = 0.0;
  for (double d : tr.drift) worst = std::max(worst, d);
  CHECK(worst <= 1e-6);
  CHECK(tr.drift.size() == 201);
  for (double r : ward_residual(tr, WardInverse::adjoint)) CHECK(r < 1e-3);
}

TEST_CASE("Ward RK4 converges at fourth order") {
  const auto g = make_grid(2.0 * pi, 16, pi, 2);
  const auto s = ward_exponential(g, default_generator(2));
  const auto ref = run(s, 0.4, 0.0025, false).samples.back();
  const double e1 = ward_distance(run(s, 0.4, 0.02, false).samples.back(), ref);
  const double e2 = ward_distance(run(s, 0.4, 0.01, false).samples.back(), ref);
  CAPTURE(e1);
  CAPTURE(e2);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("exact and adjoint inverses agree on the group") {
  // they differ by the spectral truncation of the derivatives of J, so the grid
  // must resolve exp(A sin x1)
  const auto g = make_grid(2.0 * pi, 64, pi, 2);
  const auto s = ward_exponential(g, default_generator(3));
  const auto a = ward_acceleration(s, WardInverse::adjoint);
  const auto b = ward_acceleration(s, WardInverse::exact);
  double d = 0.0, m = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c)
    for (std::size_t k = 0; k < a[c].values.size(); ++k) {
      d = std::max(d, std::abs(a[c].values[k] - b[c].values[k]));
      m = std::max(m, std::abs(a[c].values[k]));
    }
  CHECK(m > 0.0);
  CHECK(d < 1e-11 * m);
}
