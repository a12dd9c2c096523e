#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nullwave/grid.hpp"

namespace nullwave {

/// Small complex matrix, n <= 3, stored inline.
using WardMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 3, 3>;

/// J and J_t as n*n physical component fields, entry (a, b) at a*n + b.
struct WardState {
  SpacetimeGrid grid;
  int n = 2;
  std::vector<PhysicalField> J, Jt;

  WardMatrix at(const std::vector<PhysicalField>& m, std::size_t point) const;
  void set(std::vector<PhysicalField>& m, std::size_t point, const WardMatrix& value) const;
  std::size_t points() const { return grid.spatial_size(); }
};

/// How J^{-1} enters the nonlinearity.
enum class WardInverse { adjoint, exact };

struct WardOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  int sample_every = 10;
  bool project = true;
  WardInverse inverse = WardInverse::adjoint;
  double cfl = 0.5;
  double growth_limit = 1e6;
  double polar_tol = 1e-12;
  int polar_max_iterations = 50;
};

struct WardTrajectory {
  std::vector<double> times;
  std::vector<WardState> samples;
  std::vector<double> drift;  // max_x ||J*J - I||_F after every step, entry 0 at t = 0
  int sample_every = 1;
  double dt = 0.0;
};

/// J = Id, J_t = 0.
WardState ward_identity(const SpacetimeGrid& grid, int n);
/// J(x) = exp(A sin x1) with A skew-Hermitian, J_t = 0.
WardState ward_exponential(const SpacetimeGrid& grid, const Eigen::MatrixXcd& A);
/// A fixed skew-Hermitian generator for n in {1, 2, 3}.
Eigen::MatrixXcd default_generator(int n);

/// max_x ||J*J - I||_F.
double unitarity_defect(const WardState& state);
/// max_x ||J*J_t + (J*J_t)*||_F; zero when J_t is tangent to U(n).
double tangency_defect(const WardState& state);

/// Unitary polar factor by the Newton iteration X <- (X + X^{-*})/2.
/// Throws std::runtime_error on a singular or non-converging input.
WardMatrix polar_unitary(const WardMatrix& m, double tol = 1e-12, int max_iterations = 50);

/// J_tt = Laplacian J - J (Q0(A, J) + Q02(A, J)) with A = J^{-1} (J* by default),
/// where Q0(A, J) = A_t J_t - grad A . grad J and Q02(A, J) = A_t d2 J - d2 A J_t.
std::vector<PhysicalField> ward_acceleration(const WardState& state, WardInverse inverse);

/// RK4 in time, spectral derivatives in space, optional projection of J to
/// U(n) after every step.
WardTrajectory evolve_ward(const WardState& initial, const WardOptions& options);

/// ||J_tt - ward_acceleration|| in L^2 per interior sample, J_tt by the
/// fourth-order 5-point stencil.
std::vector<double> ward_residual(const WardTrajectory& trajectory, WardInverse inverse);

/// Relative L^2 distance of the J fields of two states.
double ward_distance(const WardState& a, const WardState& b);

}  // namespace nullwave
