#include "nullwave/cone.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nullwave/parallel.hpp"

namespace nullwave {

namespace {

constexpr double quad_tol = 1e-11;
constexpr unsigned quad_depth = 20;

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi) {
  QuadratureResult out;
  out.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, quad_depth, quad_tol,
                                                                           &out.error);
  return out;
}

bool hyperbolic(ConeRegime regime) { return regime != ConeRegime::elliptic; }

// |q| of the normalized symbol on the cone, from the angle between eta and
// zeta = xi - eta. For Q0j the vector (Q01, Q02) is used, which dominates
// each component.
double exact_symbol(NullFormKind kind, bool hyp, double a, double b, double c) {
  const double cos_t = std::clamp((c * c - a * a - b * b) / (2.0 * a * b), -1.0, 1.0);
  switch (kind) {
    case NullFormKind::q12:
      return std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    case NullFormKind::q01:
    case NullFormKind::q02:
      return std::sqrt(std::max(0.0, hyp ? 2.0 + 2.0 * cos_t : 2.0 - 2.0 * cos_t));
    case NullFormKind::q0:
      return hyp ? 1.0 + cos_t : 1.0 - cos_t;
    case NullFormKind::generic:
      return hyp ? 1.0 - cos_t : 1.0 + cos_t;
  }
  return 0.0;
}

}  // namespace

std::string to_string(ConeRegime regime) {
  switch (regime) {
    case ConeRegime::elliptic:
      return "elliptic";
    case ConeRegime::hyperbolic_low:
      return "hyperbolic-low";
    case ConeRegime::hyperbolic_high:
      return "hyperbolic-high";
  }
  return "?";
}

ConeRegime parse_cone_regime(const std::string& name) {
  if (name == "elliptic") return ConeRegime::elliptic;
  if (name == "hyperbolic-low" || name == "hyperbolic_low") return ConeRegime::hyperbolic_low;
  if (name == "hyperbolic-high" || name == "hyperbolic_high") return ConeRegime::hyperbolic_high;
  throw std::invalid_argument("unknown cone regime '" + name + "'");
}

void ConeIntegralSpec::validate() const {
  if (!(r > 1.0 && r <= 2.0)) throw std::invalid_argument("cone integral: r must lie in (1, 2]");
  if (!(xi > 0.0) || !std::isfinite(xi)) throw std::invalid_argument("cone integral: |xi| must be positive");
  const double w = 1.0 / r;
  const bool first = std::abs(s1 - w) < 1e-12 && std::abs(s2) < 1e-12;
  const bool second = std::abs(s1) < 1e-12 && std::abs(s2 - w) < 1e-12;
  if (!first && !second) throw std::invalid_argument("cone integral: (s1, s2) must be (1/r, 0) or (0, 1/r)");
  if (regime == ConeRegime::elliptic) {
    if (!(tau >= xi)) throw std::invalid_argument("cone integral: elliptic regime needs tau >= |xi|");
  } else {
    if (!(std::abs(tau) < xi)) throw std::invalid_argument("cone integral: hyperbolic regime needs |tau| < |xi|");
  }
  if (regime == ConeRegime::hyperbolic_high && !(outer_cutoff > 2.0))
    throw std::invalid_argument("cone integral: outer cutoff must exceed 2");
  if (kind == NullFormKind::generic && !exact_symbol)
    throw std::invalid_argument("cone integral: the generic product has no bound; use exact_symbol");
  if (kind == NullFormKind::generic && regime == ConeRegime::hyperbolic_high && std::isinf(outer_cutoff))
    throw std::invalid_argument("cone integral: generic hyperbolic-high integral diverges without a cutoff");
}

double cone_integrand(const ConeIntegralSpec& spec, double a, double b) {
  const bool hyp = hyperbolic(spec.regime);
  const double w = spec.exact_symbol
                       ? exact_symbol(spec.kind, hyp, a, b, spec.xi)
                       : symbol_bound(spec.kind, hyp ? Regime::hyperbolic : Regime::elliptic, a, b, spec.xi);
  return std::pow(w, spec.r) * std::pow(a, -spec.s1 * spec.r) * std::pow(b, -spec.s2 * spec.r);
}

QuadratureResult tail_integral(const std::function<double(double)>& f, double lower, double decay) {
  if (!(decay > 1.0)) throw std::invalid_argument("tail_integral: decay must exceed 1");
  const double p = 1.0 / (decay - 1.0);
  auto h = [&](double u) {
    const double x = lower * std::pow(u, -p);
    const double v = f(x) * lower * p * std::pow(u, -p - 1.0);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(h, 0.0, 1.0);
}

QuadratureResult cone_integral(const ConeIntegralSpec& spec) {
  spec.validate();
  const double c = spec.xi, tau = spec.tau;
  if (spec.regime == ConeRegime::elliptic) {
    if (tau == c) return {};
    // a + b = tau, a - b = c cos(theta)
    const double root = std::sqrt(tau * tau - c * c);
    auto f = [&](double theta) {
      const double d = c * std::cos(theta);
      const double a = 0.5 * (tau + d), b = 0.5 * (tau - d);
      return 2.0 * a * b * cone_integrand(spec, a, b) / root;
    };
    return integrate(f, 0.0, pi);
  }
  // a - b = tau, a + b = c x, x >= 1
  const double root = std::sqrt(c * c - tau * tau);
  auto in_x = [&](double x) {
    const double a = 0.5 * (c * x + tau), b = 0.5 * (c * x - tau);
    return 2.0 * a * b * cone_integrand(spec, a, b) / root;
  };
  auto in_mu = [&](double mu) { return in_x(std::cosh(mu)); };
  if (spec.regime == ConeRegime::hyperbolic_low) return integrate(in_mu, 0.0, std::acosh(2.0));
  if (std::isfinite(spec.outer_cutoff)) return integrate(in_mu, std::acosh(2.0), std::acosh(spec.outer_cutoff));
  const double decay = spec.kind == NullFormKind::q0 ? 2.0 * spec.r : spec.r;
  return tail_integral([&](double x) { return in_x(x) / std::sqrt(x * x - 1.0); }, 2.0, decay);
}

namespace {

// Smallest x in [lo, hi] with F(x) >= v, for non-decreasing F.
template <class F>
double first_at_least(F&& f, double v, double lo, double hi) {
  if (f(lo) >= v) return lo;
  if (f(hi) < v) return hi;
  for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= v ? hi : lo) = mid;
  }
  return hi;
}

double level_set_sum(const LevelSet& set, const std::function<double(double, double)>& g, double eps, double h) {
  const double c = set.c, tau = set.tau;
  const double s_top = set.elliptic ? std::min(tau + eps, set.s_max) : set.s_max;
  if (!std::isfinite(s_top)) throw std::invalid_argument("mollified oracle: level set must be bounded");
  const double y_max = 0.5 * std::sqrt(std::max(0.0, s_top * s_top - c * c));
  const double x_lo = 0.5 * (c - s_top), x_hi = 0.5 * (c + s_top);
  const long rows = static_cast<long>(std::floor(y_max / h));
  double total = 0.0;
  auto visit = [&](double y, double from, double to) {
    // lattice points x = i h in [from, to)
    for (long i = static_cast<long>(std::ceil(from / h)); i * h < to; ++i) {
      const double x = i * h;
      const double a = std::hypot(x, y), b = std::hypot(x - c, y);
      if (a == 0.0 || b == 0.0) continue;
      const double s = a + b;
      if (!(s > set.s_min && s <= set.s_max)) continue;
      const double p = set.elliptic ? s : a - b;
      const double w = 1.0 - std::abs(tau - p) / eps;
      if (w > 0.0) total += g(a, b) * w / eps;
    }
  };
  for (long j = -rows; j <= rows; ++j) {
    const double y = j * h;
    auto sum_s = [&](double x) { return std::hypot(x, y) + std::hypot(x - c, y); };
    auto diff = [&](double x) { return std::hypot(x, y) - std::hypot(x - c, y); };
    if (set.elliptic) {
      // S is convex in x with minimum at c/2; scan each monotone half
      const double mid = 0.5 * c;
      const double r0 = first_at_least(sum_s, tau - eps, mid, x_hi);
      const double r1 = first_at_least(sum_s, tau + eps, mid, x_hi);
      visit(y, r0, std::nextafter(r1, HUGE_VAL));
      auto mirrored = [&](double x) { return sum_s(c - x); };
      const double l0 = first_at_least(mirrored, tau - eps, mid, x_hi);
      const double l1 = first_at_least(mirrored, tau + eps, mid, x_hi);
      visit(y, c - l1, std::min(c - l0, mid));
    } else {
      const double d0 = first_at_least(diff, tau - eps, x_lo, x_hi);
      const double d1 = first_at_least(diff, tau + eps, x_lo, x_hi);
      visit(y, d0, std::nextafter(d1, HUGE_VAL));
    }
  }
  return total * h * h;
}

}  // namespace

QuadratureResult mollified_level_set_integral(const LevelSet& set, const std::function<double(double, double)>& g,
                                              const std::vector<double>& eps_list, double lattice_ratio) {
  if (eps_list.empty()) throw std::invalid_argument("mollified oracle: empty eps list");
  if (!(lattice_ratio >= 4.0)) throw std::invalid_argument("mollified oracle: lattice ratio too small");
  std::vector<double> level;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw std::invalid_argument("mollified oracle: eps must be positive");
    level.push_back(level_set_sum(set, g, eps, eps / lattice_ratio));
  }
  // Richardson on the even expansion I(eps) = I + k2 eps^2 + k4 eps^4 + ...
  std::vector<double> eps = eps_list;
  QuadratureResult out{level.back(), 0.0};
  for (int order = 2; level.size() > 1; order += 2) {
    std::vector<double> next;
    for (std::size_t k = 0; k + 1 < level.size(); ++k) {
      const double rho = std::pow(eps[k] / eps[k + 1], order);
      next.push_back((rho * level[k + 1] - level[k]) / (rho - 1.0));
    }
    out.error = std::abs(next.back() - level.back());
    out.value = next.back();
    level = std::move(next);
    eps.erase(eps.begin());
  }
  return out;
}

QuadratureResult mollified_oracle(const ConeIntegralSpec& spec, const std::vector<double>& eps_list,
                                  double lattice_ratio) {
  spec.validate();
  LevelSet set;
  set.elliptic = spec.regime == ConeRegime::elliptic;
  set.c = spec.xi;
  set.tau = spec.tau;
  if (spec.regime == ConeRegime::hyperbolic_low) set.s_max = 2.0 * spec.xi;
  if (spec.regime == ConeRegime::hyperbolic_high) {
    if (!std::isfinite(spec.outer_cutoff))
      throw std::invalid_argument("mollified oracle: hyperbolic-high needs a finite outer cutoff");
    set.s_min = 2.0 * spec.xi;
    set.s_max = spec.outer_cutoff * spec.xi;
  }
  if (set.elliptic && spec.tau == spec.xi) return {};
  return mollified_level_set_integral(set, [&](double a, double b) { return cone_integrand(spec, a, b); }, eps_list,
                                      lattice_ratio);
}

bool ScanReport::stable(double rel_tol) const {
  if (!std::isfinite(sup)) return false;
  for (std::size_t k = 1; k < scale_sup.size(); ++k)
    if (!std::isfinite(scale_sup[k]) || scale_sup[k] > scale_sup[k - 1] * (1.0 + rel_tol) + 1e-300) return false;
  return true;
}

std::vector<std::pair<double, double>> default_scan_samples(ConeRegime regime, int n_scales, int n_ratios) {
  if (n_scales < 1 || n_ratios < 1) throw std::invalid_argument("scan: need at least one scale and one ratio");
  std::vector<double> ratios;
  if (regime == ConeRegime::elliptic) {
    // tau / |xi| = 1 + 2^e, e in [-8, 6]
    for (int k = 0; k < n_ratios; ++k)
      ratios.push_back(1.0 + std::exp2(n_ratios == 1 ? 0.0 : -8.0 + 14.0 * k / (n_ratios - 1)));
  } else {
    // tau / |xi| = +-(1 - 2^-e), e in (0, 10], and 0 for odd counts
    const int half = n_ratios / 2;
    for (int k = 0; k < half; ++k) {
      const double rho = 1.0 - std::exp2(-10.0 * (k + 1) / half);
      ratios.push_back(-rho);
      ratios.push_back(rho);
    }
    if (n_ratios % 2 == 1) ratios.push_back(0.0);
    std::sort(ratios.begin(), ratios.end());
  }
  std::vector<std::pair<double, double>> out;
  for (int s = 0; s < n_scales; ++s) {
    const double xi = std::exp2(n_scales == 1 ? 0.0 : -2.0 + 8.0 * s / (n_scales - 1));
    for (double q : ratios) out.emplace_back(xi, q * xi);
  }
  return out;
}

ScanReport uniform_bound_scan(ConeRegime regime, NullFormKind kind, double r, bool weight_on_first,
                              const std::vector<std::pair<double, double>>& samples, std::uint64_t seed, int jobs,
                              int oracle_every) {
  const auto start = std::chrono::steady_clock::now();
  ScanReport rep;
  rep.regime = regime;
  rep.kind = kind;
  rep.r = r;
  rep.s1 = weight_on_first ? 1.0 / r : 0.0;
  rep.s2 = weight_on_first ? 0.0 : 1.0 / r;
  rep.seed = seed;
  rep.description = "cone integral " + to_string(regime) + " " + std::string(to_string(kind));
  rep.points.resize(samples.size());
  auto spec_for = [&](double xi, double tau) {
    ConeIntegralSpec s;
    s.regime = regime;
    s.kind = kind;
    s.xi = xi;
    s.tau = tau;
    s.r = r;
    s.s1 = rep.s1;
    s.s2 = rep.s2;
    return s;
  };
  for (const auto& [xi, tau] : samples) spec_for(xi, tau).validate();
  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    const auto [xi, tau] = samples[i];
    const auto q = cone_integral(spec_for(xi, tau));
    rep.points[i] = ScanPoint{xi, tau, q.value, q.error};
  });
  std::map<double, double> per_scale;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const auto& p = rep.points[i];
    auto& m = per_scale[p.xi];
    m = std::max(m, p.value);
    if (p.value > rep.sup) {
      rep.sup = p.value;
      rep.argmax = i;
    }
  }
  for (const auto& [xi, m] : per_scale) {
    rep.scale_xi.push_back(xi);
    rep.scale_sup.push_back(m);
  }
  if (oracle_every > 0 && !(regime == ConeRegime::hyperbolic_high)) {
    for (std::size_t i = 0; i < samples.size(); i += static_cast<std::size_t>(oracle_every)) {
      const auto [xi, tau] = samples[i];
      const double gap = regime == ConeRegime::elliptic ? tau - xi : xi - std::abs(tau);
      if (!(gap > 0.0)) continue;
      const double e0 = 0.04 * std::min(xi, gap);
      const auto o = mollified_oracle(spec_for(xi, tau), {e0, e0 / 2, e0 / 4});
      const double ref = rep.points[i].value;
      rep.oracle_errors.push_back(std::abs(o.value - ref) / std::max(std::abs(ref), 1e-300));
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace nullwave
