#include "nullwave/ward.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "nullwave/fft.hpp"
#include "nullwave/solver.hpp"

namespace nullwave {

namespace {

using Fields = std::vector<PhysicalField>;

struct Derivatives {
  Fields d1, d2, lap;
};

Derivatives spatial_derivatives(const Fields& J) {
  Derivatives out;
  for (const auto& f : J) {
    const auto s = transform(f);
    const auto& g = s.grid;
    SpectralField a(g, Extent::spatial), b(g, Extent::spatial), l(g, Extent::spatial);
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2) {
        const cplx v = s(i1, i2);
        a(i1, i2) = g.nyquist(i1) ? cplx(0.0) : cplx(0.0, g.xi(i1)) * v;
        b(i1, i2) = g.nyquist(i2) ? cplx(0.0) : cplx(0.0, g.xi(i2)) * v;
        const double k = g.xi_norm(i1, i2);
        l(i1, i2) = -k * k * v;
      }
    out.d1.push_back(inverse_transform(a));
    out.d2.push_back(inverse_transform(b));
    out.lap.push_back(inverse_transform(l));
  }
  return out;
}

Fields axpy(const Fields& x, double a, const Fields& y) {
  Fields out = x;
  for (std::size_t c = 0; c < out.size(); ++c)
    for (std::size_t k = 0; k < out[c].values.size(); ++k) out[c].values[k] += a * y[c].values[k];
  return out;
}

WardMatrix identity(int n) { return WardMatrix::Identity(n, n); }

}  // namespace

WardMatrix WardState::at(const std::vector<PhysicalField>& m, std::size_t point) const {
  WardMatrix out(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out(a, b) = m[a * n + b].values[point];
  return out;
}

void WardState::set(std::vector<PhysicalField>& m, std::size_t point, const WardMatrix& value) const {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[a * n + b].values[point] = value(a, b);
}

WardState ward_identity(const SpacetimeGrid& grid, int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("ward: group dimension must be 1, 2 or 3");
  WardState s{grid, n, Fields(n * n, PhysicalField(grid, Extent::spatial)),
              Fields(n * n, PhysicalField(grid, Extent::spatial))};
  for (std::size_t p = 0; p < s.points(); ++p) s.set(s.J, p, identity(n));
  return s;
}

Eigen::MatrixXcd default_generator(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("ward: group dimension must be 1, 2 or 3");
  Eigen::MatrixXcd a(3, 3);
  a << cplx(0, 0.3), cplx(0.5, 0.2), cplx(0.1, -0.3),  //
      cplx(-0.5, 0.2), cplx(0, -0.1), cplx(0.25, 0.0),  //
      cplx(-0.1, -0.3), cplx(-0.25, 0.0), cplx(0, 0.2);
  return a.topLeftCorner(n, n);
}

WardState ward_exponential(const SpacetimeGrid& grid, const Eigen::MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw std::invalid_argument("ward: generator must be square");
  if ((A + A.adjoint()).norm() > 1e-14 * std::max(1.0, A.norm()))
    throw std::invalid_argument("ward: generator must be skew-Hermitian");
  WardState s = ward_identity(grid, n);
  for (int i1 = 0; i1 < grid.n; ++i1) {
    const Eigen::MatrixXcd row = (A * std::sin(grid.x(i1))).exp();
    for (int i2 = 0; i2 < grid.n; ++i2) s.set(s.J, s.J.front().index(i1, i2), row);
  }
  return s;
}

double unitarity_defect(const WardState& s) {
  double worst = 0.0;
  for (std::size_t p = 0; p < s.points(); ++p) {
    const WardMatrix j = s.at(s.J, p);
    worst = std::max(worst, (j.adjoint() * j - identity(s.n)).norm());
  }
  return worst;
}

double tangency_defect(const WardState& s) {
  double worst = 0.0;
  for (std::size_t p = 0; p < s.points(); ++p) {
    const WardMatrix m = s.at(s.J, p).adjoint() * s.at(s.Jt, p);
    worst = std::max(worst, (m + m.adjoint()).norm());
  }
  return worst;
}

WardMatrix polar_unitary(const WardMatrix& m, double tol, int max_iterations) {
  WardMatrix x = m;
  for (int it = 0; it < max_iterations; ++it) {
    if (!(std::abs(x.determinant()) > 1e-14)) throw std::runtime_error("polar projection: singular matrix");
    const WardMatrix next = 0.5 * (x + WardMatrix(x.inverse().adjoint()));
    const double step = (next - x).norm();
    x = next;
    if (step < tol) return x;
  }
  throw std::runtime_error("polar projection: no convergence in " + std::to_string(max_iterations) + " iterations");
}

std::vector<PhysicalField> ward_acceleration(const WardState& s, WardInverse inverse) {
  const Derivatives d = spatial_derivatives(s.J);
  Fields out = d.lap;
  for (std::size_t p = 0; p < s.points(); ++p) {
    const WardMatrix j = s.at(s.J, p), jt = s.at(s.Jt, p), j1 = s.at(d.d1, p), j2 = s.at(d.d2, p);
    WardMatrix a, at, a1, a2;
    if (inverse == WardInverse::adjoint) {
      a = j.adjoint();
      at = jt.adjoint();
      a1 = j1.adjoint();
      a2 = j2.adjoint();
    } else {
      a = j.inverse();
      at = -a * jt * a;
      a1 = -a * j1 * a;
      a2 = -a * j2 * a;
    }
    const WardMatrix q0 = at * jt - a1 * j1 - a2 * j2;
    const WardMatrix q02 = at * j2 - a2 * jt;
    s.set(out, p, s.at(d.lap, p) - j * (q0 + q02));
  }
  return out;
}

WardTrajectory evolve_ward(const WardState& initial, const WardOptions& o) {
  if (!(o.dt > 0.0) || !(o.t_end >= 0.0)) throw std::invalid_argument("evolve_ward: bad time range");
  if (o.dt > max_stable_dt(initial.grid, o.cfl) * (1.0 + 1e-12))
    throw std::invalid_argument("evolve_ward: dt exceeds the CFL bound");
  const long steps = std::lround(o.t_end / o.dt);
  if (std::abs(steps * o.dt - o.t_end) > 1e-9 * std::max(1.0, o.t_end))
    throw std::invalid_argument("evolve_ward: t_end is not a multiple of dt");
  if (o.sample_every < 1 || steps % o.sample_every != 0)
    throw std::invalid_argument("evolve_ward: sample_every must divide the step count");

  WardTrajectory traj;
  traj.dt = o.dt;
  traj.sample_every = o.sample_every;
  WardState s = initial;
  traj.times.push_back(0.0);
  traj.samples.push_back(s);
  traj.drift.push_back(unitarity_defect(s));
  auto size = [](const WardState& w) {
    double acc = 0.0;
    for (const auto* set : {&w.J, &w.Jt})
      for (const auto& f : *set)
        for (const auto& v : f.values) acc += std::norm(v);
    return std::sqrt(acc);
  };
  const double start = size(s);
  const double h = o.dt;
  auto stage = [&](const Fields& J, const Fields& Jt) {
    WardState w{s.grid, s.n, J, Jt};
    return ward_acceleration(w, o.inverse);
  };
  for (long step = 1; step <= steps; ++step) {
    const auto k1u = s.Jt;
    const auto k1v = stage(s.J, s.Jt);
    const auto u2 = axpy(s.J, h / 2, k1u), v2 = axpy(s.Jt, h / 2, k1v);
    const auto k2v = stage(u2, v2);
    const auto u3 = axpy(s.J, h / 2, v2), v3 = axpy(s.Jt, h / 2, k2v);
    const auto k3v = stage(u3, v3);
    const auto u4 = axpy(s.J, h, v3), v4 = axpy(s.Jt, h, k3v);
    const auto k4v = stage(u4, v4);
    for (std::size_t c = 0; c < s.J.size(); ++c)
      for (std::size_t k = 0; k < s.J[c].values.size(); ++k) {
        s.J[c].values[k] += h / 6 * (k1u[c].values[k] + 2.0 * v2[c].values[k] + 2.0 * v3[c].values[k] + v4[c].values[k]);
        s.Jt[c].values[k] +=
            h / 6 * (k1v[c].values[k] + 2.0 * k2v[c].values[k] + 2.0 * k3v[c].values[k] + k4v[c].values[k]);
      }
    if (o.project)
      for (std::size_t p = 0; p < s.points(); ++p)
        s.set(s.J, p, polar_unitary(s.at(s.J, p), o.polar_tol, o.polar_max_iterations));
    const double now = size(s);
    if (!std::isfinite(now) || now > o.growth_limit * std::max(start, 1e-300))
      throw SolverInstability("evolve_ward: state norm grew to " + std::to_string(now) + " at t = " +
                              std::to_string(step * h));
    traj.drift.push_back(unitarity_defect(s));
    if (step % o.sample_every == 0) {
      traj.times.push_back(step * h);
      traj.samples.push_back(s);
    }
  }
  return traj;
}

std::vector<double> ward_residual(const WardTrajectory& traj, WardInverse inverse) {
  const std::size_t k_max = traj.samples.size();
  if (k_max < 5) throw std::invalid_argument("ward_residual: need at least five samples");
  const double h = traj.dt * traj.sample_every;
  const double cell = traj.samples.front().grid.dx() * traj.samples.front().grid.dx();
  std::vector<double> out;
  for (std::size_t k = 2; k + 2 < k_max; ++k) {
    const auto acc = ward_acceleration(traj.samples[k], inverse);
    double sum = 0.0;
    for (std::size_t c = 0; c < acc.size(); ++c)
      for (std::size_t m = 0; m < acc[c].values.size(); ++m) {
        auto v = [&](std::size_t i) { return traj.samples[i].J[c].values[m]; };
        const cplx jtt = (-v(k - 2) + 16.0 * v(k - 1) - 30.0 * v(k) + 16.0 * v(k + 1) - v(k + 2)) / (12.0 * h * h);
        sum += std::norm(jtt - acc[c].values[m]);
      }
    out.push_back(std::sqrt(sum * cell));
  }
  return out;
}

double ward_distance(const WardState& a, const WardState& b) {
  if (a.n != b.n || !(a.grid == b.grid)) throw std::invalid_argument("ward_distance: state mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t c = 0; c < a.J.size(); ++c)
    for (std::size_t k = 0; k < a.J[c].values.size(); ++k) {
      num += std::norm(a.J[c].values[k] - b.J[c].values[k]);
      den += std::norm(b.J[c].values[k]);
    }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace nullwave
