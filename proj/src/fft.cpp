#include "nullwave/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace nullwave {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n0, int n1, int n2, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(n0, n1, n2, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> scratch(static_cast<std::size_t>(n0) * n1 * n2);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = n0 == 1 ? fftw_plan_dft_2d(n1, n2, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                             : fftw_plan_dft_3d(n0, n1, n2, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::vector<cplx>& data, int n0, int n1, int n2, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(n0, n1, n2, sign), buf, buf);
}

// e^{i tau T} = (-1)^k for tau = k pi / T.
double time_origin_phase(const SpacetimeGrid& g, int j) {
  return (SpacetimeGrid::wavenumber(j, g.n_time) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

SpectralField transform(const PhysicalField& f) {
  const auto& g = f.grid;
  SpectralField out(g, f.extent);
  if (out.values.size() != f.values.size()) throw std::invalid_argument("transform: dimension mismatch");
  out.values = f.values;
  if (f.extent == Extent::spatial) {
    run(out.values, 1, g.n, g.n, FFTW_FORWARD);
    const double w = g.dx() * g.dx() / (2.0 * pi);
    for (auto& v : out.values) v *= w;
  } else {
    run(out.values, g.n_time, g.n, g.n, FFTW_FORWARD);
    const double w = g.dt() * g.dx() * g.dx() / std::pow(2.0 * pi, 1.5);
    const std::size_t m = g.spatial_size();
    for (int j = 0; j < g.n_time; ++j) {
      const double s = w * time_origin_phase(g, j);
      for (std::size_t k = 0; k < m; ++k) out.values[j * m + k] *= s;
    }
  }
  return out;
}

PhysicalField inverse_transform(const SpectralField& f) {
  const auto& g = f.grid;
  PhysicalField out(g, f.extent);
  if (out.values.size() != f.values.size()) throw std::invalid_argument("inverse_transform: dimension mismatch");
  out.values = f.values;
  if (f.extent == Extent::spatial) {
    const double w = g.dxi() * g.dxi() / (2.0 * pi);
    for (auto& v : out.values) v *= w;
    run(out.values, 1, g.n, g.n, FFTW_BACKWARD);
  } else {
    const double w = g.dtau() * g.dxi() * g.dxi() / std::pow(2.0 * pi, 1.5);
    const std::size_t m = g.spatial_size();
    for (int j = 0; j < g.n_time; ++j) {
      const double s = w * time_origin_phase(g, j);
      for (std::size_t k = 0; k < m; ++k) out.values[j * m + k] *= s;
    }
    run(out.values, g.n_time, g.n, g.n, FFTW_BACKWARD);
  }
  return out;
}

bool inside_dealiased_band(int index, int size) {
  return 3 * std::abs(SpacetimeGrid::wavenumber(index, size)) < size;
}

void dealias(SpectralField& f) {
  const auto& g = f.grid;
  const int nt = f.extent == Extent::spatial ? 1 : g.n_time;
  for (int j = 0; j < nt; ++j) {
    const bool keep_t = f.extent == Extent::spatial || inside_dealiased_band(j, g.n_time);
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2) {
        if (keep_t && inside_dealiased_band(i1, g.n) && inside_dealiased_band(i2, g.n)) continue;
        f.values[(static_cast<std::size_t>(j) * g.n + i1) * g.n + i2] = 0.0;
      }
  }
}

}  // namespace nullwave
