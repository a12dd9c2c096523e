#include "nullwave/bilinear.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "nullwave/parallel.hpp"
#include "nullwave/rng.hpp"

namespace nullwave {

namespace {

struct Entry {
  int k1, k2;
  cplx value;
};

std::vector<Entry> support(const SpectralField& f) {
  std::vector<Entry> out;
  const int n = f.grid.n;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      if (f(i1, i2) != cplx(0.0))
        out.push_back({SpacetimeGrid::wavenumber(i1, n), SpacetimeGrid::wavenumber(i2, n), f(i1, i2)});
  return out;
}

double data_norm(const std::vector<Entry>& s, double dxi, double sigma, double rp) {
  double acc = 0.0;
  for (const auto& e : s) acc += std::pow(std::pow(bracket(dxi * e.k1, dxi * e.k2), sigma) * std::abs(e.value), rp);
  return std::pow(acc * dxi * dxi, 1.0 / rp);
}

int log2_int(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

}  // namespace

void BilinearConfig::validate() const {
  if (!(r > 1.0 && r <= 2.0)) throw std::invalid_argument("bilinear: r must lie in (1, 2]");
  if (std::abs(sign_u) != 1 || std::abs(sign_v) != 1) throw std::invalid_argument("bilinear: signs must be +-1");
  if (scales.empty() || annulus_members < 0 || sector_members < 0 || annulus_members + sector_members < 1)
    throw std::invalid_argument("bilinear: empty ensemble");
  if (!is_power_of_two(grid_n)) throw std::invalid_argument("bilinear: grid size must be a power of two");
  for (int s : scales)
    if (s < 2 || 2 * s > grid_n) throw std::invalid_argument("bilinear: annulus scale outside the grid");
}

std::vector<double> BilinearTable::diagonal() const {
  std::vector<std::pair<int, double>> d;
  for (const auto& row : rows)
    if (row.n1 == row.n2 && !row.skipped) d.emplace_back(row.n1, row.ratio);
  std::sort(d.begin(), d.end());
  std::vector<double> out;
  for (const auto& [n, v] : d) out.push_back(v);
  return out;
}

double BilinearTable::diagonal_max_over_median() const {
  auto d = diagonal();
  if (d.empty()) return 0.0;
  std::sort(d.begin(), d.end());
  const std::size_t h = d.size() / 2;
  const double med = d.size() % 2 ? d[h] : 0.5 * (d[h - 1] + d[h]);
  return med > 0.0 ? d.back() / med : 0.0;
}

double BilinearTable::diagonal_slope() const {
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : rows)
    if (row.n1 == row.n2 && !row.skipped && row.ratio > 0.0) pts.emplace_back(std::log(row.n1), std::log(row.ratio));
  if (pts.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) mx += x, my += y;
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
  return sxy / sxx;
}

bool BilinearTable::monotone_growth() const {
  const auto d = diagonal();
  if (d.size() < 2) return false;
  for (std::size_t k = 1; k < d.size(); ++k)
    if (!(d[k] > d[k - 1])) return false;
  return true;
}

std::optional<BilinearRatio> bilinear_ratio(NullFormKind kind, int sign_u, int sign_v, double sigma, double r,
                                            const SpectralField& f0, const SpectralField& v0, int jobs) {
  f0.require_compatible(v0);
  if (f0.extent != Extent::spatial) throw std::invalid_argument("bilinear_ratio: data must be spatial spectra");
  const SpacetimeGrid& g = f0.grid;
  const int n = g.n;
  const double dxi = g.dxi(), dtau = dxi;
  const double rp = r / (r - 1.0);
  const auto fs = support(f0), vs = support(v0);
  const double df = data_norm(fs, dxi, sigma, rp), dv = data_norm(vs, dxi, sigma, rp);
  if (!(df > 0.0) || !(dv > 0.0)) return std::nullopt;

  // v entries grouped by first wavenumber, so output row x1 pairs eta with
  // the v row x1 - eta_1 only
  std::vector<std::vector<Entry>> v_rows(n);
  for (const auto& e : vs) v_rows[e.k1 + n / 2].push_back(e);
  const int bins = 2 * static_cast<int>(std::ceil(1.5 * n)) + 1;
  const int bin_offset = bins / 2;
  const double weight = dxi * dxi / (dtau * std::sqrt(2.0 * pi));
  const int rows = 2 * n;  // output wavenumbers in [-n, n)
  std::vector<double> row_sum(rows, 0.0);
  parallel_for(rows, jobs, [&](std::size_t row) {
    const int x1 = static_cast<int>(row) - n;
    std::vector<cplx> acc(static_cast<std::size_t>(rows) * bins);
    std::vector<std::size_t> touched;
    for (const auto& e : fs) {
      const int o1 = x1 - e.k1;
      if (o1 < -n / 2 || o1 >= n / 2) continue;
      const Vec2 eta{dxi * e.k1, dxi * e.k2};
      const double a = std::hypot(eta[0], eta[1]);
      for (const auto& o : v_rows[o1 + n / 2]) {
        const Vec2 zeta{dxi * o.k1, dxi * o.k2};
        const double b = std::hypot(zeta[0], zeta[1]);
        if (a == 0.0 || b == 0.0) continue;
        const double q = normalized_symbol(kind, sign_u * a, eta, sign_v * b, zeta);
        const int bin = static_cast<int>(std::lround((sign_u * a + sign_v * b) / dtau)) + bin_offset;
        const std::size_t cell = static_cast<std::size_t>(e.k2 + o.k2 + n) * bins + bin;
        if (acc[cell] == cplx(0.0)) touched.push_back(cell);
        acc[cell] += q * e.value * o.value;
      }
    }
    std::sort(touched.begin(), touched.end());
    double total = 0.0;
    for (std::size_t cell : touched) {
      const int x2 = static_cast<int>(cell / bins) - n;
      const double w = std::pow(bracket(dxi * x1, dxi * x2), sigma) * weight;
      total += std::pow(w * std::abs(acc[cell]), rp);
    }
    row_sum[row] = total;
  });
  double total = 0.0;
  for (double v : row_sum) total += v;
  BilinearRatio out;
  out.numerator = std::pow(total * dtau * dxi * dxi, 1.0 / rp);
  out.denominator = df * dv;
  out.ratio = out.numerator / out.denominator;
  return out;
}

SpectralField annulus_data(const SpacetimeGrid& grid, int n, PhaseMode mode, SupportShape shape,
                           std::uint64_t seed, std::uint64_t member, std::uint64_t stream, bool antipodal) {
  SpectralField f(grid, Extent::spatial);
  const CounterRng rng(seed);
  const double dxi = grid.dxi();
  // smooth profile: three plane waves in the rescaled variable xi / N
  std::array<double, 9> coef{};
  for (std::size_t k = 0; k < coef.size(); ++k) coef[k] = rng.uniform(k, 7919 + stream);
  const double direction = 2.0 * pi * rng.uniform(member, 104729) + (antipodal ? pi : 0.0);
  const double half_width = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i1 = 0; i1 < grid.n; ++i1)
    for (int i2 = 0; i2 < grid.n; ++i2) {
      const double k = grid.xi_norm(i1, i2) / dxi;
      if (k < 0.5 * n || k >= n) continue;
      const double y1 = grid.xi(i1) / (dxi * n), y2 = grid.xi(i2) / (dxi * n);
      if (shape == SupportShape::sector) {
        const double off = std::remainder(std::atan2(y2, y1) - direction, 2.0 * pi);
        if (std::abs(off) > half_width) continue;
      }
      double phase = 0.0;
      if (mode == PhaseMode::iid) {
        phase = 2.0 * pi * rng.uniform(f.index(i1, i2), stream);
      } else {
        for (int j = 0; j < 3; ++j) {
          const double kx = 2.0 * pi * (2.0 * coef[3 * j] - 1.0), ky = 2.0 * pi * (2.0 * coef[3 * j + 1] - 1.0);
          phase += std::cos(kx * y1 + ky * y2 + 2.0 * pi * coef[3 * j + 2]);
        }
      }
      f(i1, i2) = std::polar(1.0, phase);
    }
  return f;
}

BilinearTable empirical_bilinear_constant(const BilinearConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const SpacetimeGrid grid = make_grid(2.0 * pi, config.grid_n, pi, 2);
  BilinearTable table;
  table.config = config;
  for (int n1 : config.scales)
    for (int n2 : config.scales) {
      if (config.diagonal_only && n1 != n2) continue;
      BilinearRow row{n1, n2};
      bool any = false;
      const int members = config.annulus_members + config.sector_members;
      for (int member = 0; member < members; ++member) {
        const auto shape = member < config.annulus_members ? SupportShape::annulus : SupportShape::sector;
        const std::uint64_t base = 1000ULL * member;
        const auto f = annulus_data(grid, n1, config.phases, shape, config.seed, member, base + log2_int(n1));
        const auto v = annulus_data(grid, n2, config.phases, shape, config.seed, member,
                                    base + 500 + log2_int(n2), config.sign_u != config.sign_v);
        const auto res =
            bilinear_ratio(config.kind, config.sign_u, config.sign_v, config.sigma, config.r, f, v, config.jobs);
        if (!res) continue;
        if (!any || res->ratio > row.ratio) {
          row.ratio = res->ratio;
          row.numerator = res->numerator;
          row.denominator = res->denominator;
        }
        any = true;
      }
      row.skipped = !any;
      table.rows.push_back(row);
    }
  std::vector<double> ratios;
  for (const auto& row : table.rows)
    if (!row.skipped) ratios.push_back(row.ratio);
  if (ratios.empty()) throw std::invalid_argument("bilinear: every ensemble member vanished");
  table.max = *std::max_element(ratios.begin(), ratios.end());
  std::sort(ratios.begin(), ratios.end());
  const std::size_t h = ratios.size() / 2;
  table.median = ratios.size() % 2 ? ratios[h] : 0.5 * (ratios[h - 1] + ratios[h]);
  table.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return table;
}

}  // namespace nullwave
