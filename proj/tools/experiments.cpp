#include <algorithm>
#include <cmath>
#include <sstream>

#include "context.hpp"
#include "nullwave/bilinear.hpp"
#include "nullwave/cone.hpp"
#include "nullwave/exponents.hpp"
#include "nullwave/fft.hpp"
#include "nullwave/norms.hpp"
#include "nullwave/picard.hpp"
#include "nullwave/propagator.hpp"
#include "nullwave/solver.hpp"
#include "nullwave/ward.hpp"

namespace nullwave::cli {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// Report documents carry their own timings; those make the bytes differ run
// to run, so they go to the manifest only.
json without_timing(json j) {
  if (j.is_object()) {
    j.erase("wall_seconds");
    for (auto& [k, v] : j.items()) v = without_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = without_timing(v);
  }
  return j;
}

SpacetimeGrid spatial_grid(const json& c) { return make_grid(get_double(c, "L"), get_int(c, "N"), pi, 2); }

SpacetimeGrid spacetime_grid(const json& c) {
  return make_grid(get_double(c, "L"), get_int(c, "N"), get_double(c, "T_span"), get_int(c, "N_t"));
}

NullFormKind kind_of(const json& c) {
  try {
    return parse_null_form(get_string(c, "kind"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

/// amplitude * exp(cos(k x1 + phase) + sin(k x2) / 2), k = 2 pi / L.
SpectralField smooth_field(const SpacetimeGrid& g, double amplitude, double phase) {
  PhysicalField p(g, Extent::spatial);
  const double k = 2.0 * pi / g.length;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) p(i, j) = amplitude * std::exp(std::cos(k * g.x(i) + phase) + 0.5 * std::sin(k * g.x(j)));
  return transform(p);
}

NlwSystem system_of(const json& c) {
  const auto name = get_string(c, "system");
  if (name == "cross") return NlwSystem::cross_pair(kind_of(c));
  if (name == "diagonal") return NlwSystem::diagonal(kind_of(c));
  if (name == "linear") return NlwSystem::linear(2);
  throw ConfigError("system must be cross, diagonal or linear, got '" + name + "'");
}

CauchyData smooth_data(const SpacetimeGrid& g, int components, double amplitude) {
  CauchyData d;
  const double phases[] = {0.0, 1.0, 2.0, 0.5};
  for (int c = 0; c < components; ++c) {
    d.f.push_back(smooth_field(g, amplitude, phases[c % 2]));
    d.g.push_back(smooth_field(g, 0.3 * amplitude, phases[2 + c % 2]));
  }
  return d;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

// ---------------------------------------------------------------- norms

json norms_defaults() {
  return {{"check", "parseval"}, {"L", 2.0 * pi}, {"N", 32}, {"T_span", pi}, {"N_t", 32},
          {"s", 1.0},           {"b", 0.75},     {"r", 2.0}, {"homogeneous", false}, {"tol", 1e-12}};
}

NormSpec norm_of(const json& c) {
  NormSpec spec{get_double(c, "s"), get_double(c, "b"), get_double(c, "r"), get_bool(c, "homogeneous")};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

void norms_prepare(const json& c) {
  spacetime_grid(c);
  const auto spec = norm_of(c);
  const auto check = get_string(c, "check");
  require(check == "parseval" || check == "none", "check must be parseval or none");
  require(check != "parseval" || spec.r == 2.0, "the Parseval identity needs r = 2");
  get_double(c, "tol");
}

void norms_execute(const json& c, RunContext& ctx) {
  const auto g = spacetime_grid(c);
  const auto spec = norm_of(c);
  PhysicalField u(g, Extent::spacetime);
  const double k = 2.0 * pi / g.length;
  for (int j = 0; j < g.n_time; ++j)
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        const double t = g.t(j);
        u(j, a, b) = std::exp(-t * t) * std::exp(std::cos(k * g.x(a)) + 0.5 * std::sin(2.0 * k * g.x(b)));
      }
  const auto f = time_slice(u, time_origin_index(g));
  const auto fh = transform(f);
  const auto uh = transform(u);
  json report = {{"field", "exp(-t^2) exp(cos(k x1) + sin(2 k x2) / 2), k = 2 pi / L"},
                 {"norm", {{"s", spec.s}, {"b", spec.b}, {"r", spec.r}, {"homogeneous", spec.homogeneous}}},
                 {"fourier_lebesgue", fl_norm(fh, spec)},
                 {"xsb", xsb_norm(uh, spec)},
                 {"z", z_norm(uh, spec)}};
  bool finite = std::isfinite(report["fourier_lebesgue"].get<double>()) && std::isfinite(report["xsb"].get<double>()) &&
                std::isfinite(report["z"].get<double>());
  ctx.check("norms finite", finite, "fl, xsb and z norms of the test field are finite");
  if (get_string(c, "check") == "parseval") {
    double phys_x = 0.0, phys_tx = 0.0;
    for (const auto& v : f.values) phys_x += std::norm(v);
    for (const auto& v : u.values) phys_tx += std::norm(v);
    phys_x = std::sqrt(phys_x * g.dx() * g.dx());
    phys_tx = std::sqrt(phys_tx * g.dt() * g.dx() * g.dx());
    const NormSpec l2{0.0, 0.0, 2.0, false};
    const double spec_x = fl_norm(fh, l2), spec_tx = xsb_norm(uh, l2);
    const double ex = std::abs(spec_x - phys_x) / phys_x, etx = std::abs(spec_tx - phys_tx) / phys_tx;
    report["parseval"] = {{"spatial", {{"physical", phys_x}, {"spectral", spec_x}, {"relative_error", ex}}},
                          {"spacetime", {{"physical", phys_tx}, {"spectral", spec_tx}, {"relative_error", etx}}}};
    const double tol = get_double(c, "tol");
    ctx.check("parseval spatial", ex <= tol, "relative error " + fmt(ex) + " <= " + fmt(tol));
    ctx.check("parseval spacetime", etx <= tol, "relative error " + fmt(etx) + " <= " + fmt(tol));
  }
  ctx.write_json("norms.json", report);
}

// ---------------------------------------------------------------- scaling

json scaling_defaults() {
  return {{"check", "all"},  {"lambda", 2.0},     {"s", 0.5},     {"r", 1.5},      {"L", 2.0 * pi},
          {"N", 64},         {"kind", "q12"},     {"system", "cross"}, {"amplitude", 0.3}, {"t_end", 1.0},
          {"dt", 0.0125},    {"norm_tol", 1e-10}, {"tol", 1e-5}};
}

void scaling_prepare(const json& c) {
  const auto check = get_string(c, "check");
  require(check == "all" || check == "norm" || check == "solution", "check must be all, norm or solution");
  const double lambda = get_double(c, "lambda");
  int e = 0;
  require(lambda > 0.0 && std::frexp(lambda, &e) == 0.5, "lambda must be a power of two");
  norm_of(json{{"s", get_double(c, "s")}, {"b", 0.0}, {"r", get_double(c, "r")}, {"homogeneous", true}});
  spatial_grid(c);
  system_of(c);
  require(get_double(c, "t_end") > 0.0 && get_double(c, "dt") > 0.0, "t_end and dt must be positive");
  get_double(c, "amplitude");
  get_double(c, "norm_tol");
  get_double(c, "tol");
}

void scaling_execute(const json& c, RunContext& ctx) {
  const auto check = get_string(c, "check");
  const double lambda = get_double(c, "lambda");
  CsvTable table("scaling", {"check", "lambda", "measured", "predicted", "relative_error"});
  json report = json::object();
  if (check != "solution") {
    const NormSpec spec{get_double(c, "s"), 0.0, get_double(c, "r"), true};
    const auto g = spatial_grid(c);
    const auto sc = scaling_check([](double a, double b) { return std::exp(-4.0 * (a * a + b * b)); }, lambda, spec, g);
    const double err = std::abs(sc.measured - sc.predicted) / sc.predicted;
    table.add({"norm", format_double(lambda), format_double(sc.measured), format_double(sc.predicted),
               format_double(err)});
    report["norm"] = {{"measured", sc.measured}, {"predicted", sc.predicted}, {"relative_error", err}};
    const double tol = get_double(c, "norm_tol");
    ctx.check("homogeneous norm scaling", err <= tol,
              "||f(lambda .)|| / ||f|| = lambda^(s - 2/r) to " + fmt(err) + " <= " + fmt(tol));
  }
  if (check != "norm") {
    const auto g = spatial_grid(c);
    const auto system = system_of(c);
    EvolveOptions opt;
    opt.t_end = get_double(c, "t_end");
    opt.dt = get_double(c, "dt");
    opt.sample_every = static_cast<int>(std::lround(opt.t_end / opt.dt));
    const auto cov = scaling_covariance(system, smooth_data(g, system.components, get_double(c, "amplitude")), opt, lambda);
    table.add({"solution", format_double(lambda), format_double(cov.mismatch), "0", format_double(cov.mismatch)});
    report["solution"] = {{"mismatch", cov.mismatch}, {"reference_norm", cov.reference_norm}};
    const double tol = get_double(c, "tol");
    ctx.check("solution scaling covariance", cov.mismatch <= tol,
              "rescaled Cauchy problem vs rescaled solution, relative L2 " + fmt(cov.mismatch) + " <= " + fmt(tol));
  }
  ctx.write_csv("scaling.csv", table);
  ctx.write_json("scaling.json", report);
}

// ---------------------------------------------------------------- symbol-scan

json symbol_defaults() { return {{"kind", "all"}, {"regime", "all"}, {"samples", 100000}, {"c_max", 4.0}}; }

std::vector<NullFormKind> symbol_kinds(const json& c) {
  const auto k = get_string(c, "kind");
  if (k == "all") return {NullFormKind::q0, NullFormKind::q12, NullFormKind::q01, NullFormKind::q02};
  const auto kind = kind_of(c);
  require(kind != NullFormKind::generic, "the generic product has no null-form bound to test");
  return {kind};
}

std::vector<Regime> symbol_regimes(const json& c) {
  const auto r = get_string(c, "regime");
  if (r == "all") return {Regime::elliptic, Regime::hyperbolic};
  if (r == "elliptic") return {Regime::elliptic};
  if (r == "hyperbolic") return {Regime::hyperbolic};
  throw ConfigError("regime must be elliptic, hyperbolic or all, got '" + r + "'");
}

void symbol_prepare(const json& c) {
  symbol_kinds(c);
  symbol_regimes(c);
  require(get_int(c, "samples") > 0, "samples must be positive");
  get_double(c, "c_max");
}

void symbol_execute(const json& c, RunContext& ctx) {
  std::vector<DominanceReport> reports;
  const double c_max = get_double(c, "c_max");
  for (const auto kind : symbol_kinds(c))
    for (const auto regime : symbol_regimes(c)) {
      const auto rep = symbol_dominance_scan(kind, regime, static_cast<std::size_t>(get_int(c, "samples")), ctx.seed(),
                                             ctx.jobs());
      const std::string name = std::string(to_string(kind)) + (regime == Regime::elliptic ? " elliptic" : " hyperbolic");
      ctx.check("dominance " + name, std::isfinite(rep.c_emp) && rep.c_emp <= c_max && rep.violations == 0,
                "C_emp = " + fmt(rep.c_emp) + " <= " + fmt(c_max) + ", " + std::to_string(rep.violations) +
                    " samples with vanishing bound and nonzero symbol");
      reports.push_back(rep);
    }
  ctx.write_csv("dominance.csv", dominance_csv(reports));
  json all = json::array();
  for (const auto& r : reports) all.push_back(without_timing(to_json(r)));
  ctx.write_json("dominance.json", all);
}

// ---------------------------------------------------------------- cone-scan

json cone_defaults() {
  return {{"regime", "elliptic"}, {"kind", "q12"},      {"r", 2.0},         {"weight", "second"},
          {"scales", 9},          {"ratios", 8},        {"oracle_every", 0}, {"oracle_tol", 0.02},
          {"baseline", ""},       {"baseline_tol", 1e-6}};
}

ConeRegime cone_regime_of(const json& c) {
  try {
    return parse_cone_regime(get_string(c, "regime"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void cone_prepare(const json& c) {
  cone_regime_of(c);
  require(kind_of(c) != NullFormKind::generic, "cone scans take q0, q12, q01 or q02");
  const double r = get_double(c, "r");
  require(r > 1.0 && r <= 2.0, "r must lie in (1, 2]");
  const auto w = get_string(c, "weight");
  require(w == "first" || w == "second", "weight must be first or second");
  require(get_int(c, "scales") >= 2 && get_int(c, "ratios") >= 1, "need at least two scales and one ratio");
  require(get_int(c, "oracle_every") >= 0, "oracle_every must be non-negative");
  get_double(c, "oracle_tol");
  get_string(c, "baseline");
  get_double(c, "baseline_tol");
}

void cone_execute(const json& c, RunContext& ctx) {
  const auto regime = cone_regime_of(c);
  const auto samples = default_scan_samples(regime, get_int(c, "scales"), get_int(c, "ratios"));
  const auto rep = uniform_bound_scan(regime, kind_of(c), get_double(c, "r"), get_string(c, "weight") == "first", samples,
                                      ctx.seed(), ctx.jobs(), get_int(c, "oracle_every"));
  ctx.write_csv("cone_scan.csv", scan_csv(rep));
  ctx.write_json("cone_scan.json", without_timing(to_json(rep)));
  ctx.check("sup finite", std::isfinite(rep.sup), "sup I = " + fmt(rep.sup));
  ctx.check("sup non-increasing across dyadic scales", rep.stable(), "per-scale sup never rises by more than 1e-6");
  if (!rep.oracle_errors.empty()) {
    const double worst = *std::max_element(rep.oracle_errors.begin(), rep.oracle_errors.end());
    const double tol = get_double(c, "oracle_tol");
    ctx.check("mollified oracle agreement", worst <= tol, "worst relative error " + fmt(worst) + " <= " + fmt(tol));
  }
  const auto baseline = get_string(c, "baseline");
  if (!baseline.empty()) {
    // columns of cone_scan.csv: xi, tau, value, error
    std::istringstream in(read_file(baseline));
    std::string line;
    std::vector<double> values;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("xi,", 0) == 0) continue;
      std::istringstream row(line);
      std::string cell;
      for (int k = 0; k < 3 && std::getline(row, cell, ','); ++k)
        if (k == 2) values.push_back(std::stod(cell));
    }
    double worst = values.size() == rep.points.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < std::min(values.size(), rep.points.size()); ++i)
      worst = std::max(worst, std::abs(rep.points[i].value - values[i]) / std::max(std::abs(values[i]), 1e-300));
    const double tol = get_double(c, "baseline_tol");
    ctx.check("regression baseline", worst <= tol,
              std::to_string(values.size()) + " baseline values, worst relative deviation " + fmt(worst) + " <= " +
                  fmt(tol));
  }
}

// ---------------------------------------------------------------- bilinear

json bilinear_defaults() {
  return {{"kind", "q12"},          {"sign_u", 1},  {"sign_v", 1},     {"sigma", nullptr},     {"r", 2.0},
          {"scales", {4, 8, 16, 32, 64}}, {"diagonal_only", true}, {"grid", 128}, {"annulus", 1},
          {"sectors", 12},          {"phases", "smooth"}, {"ratio_max", 2.0}};
}

/// sigma above which the estimate is claimed, for the sign pair.
double bilinear_threshold(int sign_u, int sign_v, double r) { return sign_u == sign_v ? 1.0 / r : 1.0 / r - 0.5; }

BilinearConfig bilinear_config(const json& c) {
  BilinearConfig b;
  b.kind = kind_of(c);
  b.sign_u = get_int(c, "sign_u");
  b.sign_v = get_int(c, "sign_v");
  b.r = get_double(c, "r");
  b.sigma = is_null(c, "sigma") ? bilinear_threshold(b.sign_u, b.sign_v, b.r) + 0.1 : get_double(c, "sigma");
  b.scales.clear();
  for (double s : get_doubles(c, "scales")) b.scales.push_back(static_cast<int>(s));
  b.diagonal_only = get_bool(c, "diagonal_only");
  b.grid_n = get_int(c, "grid");
  b.annulus_members = get_int(c, "annulus");
  b.sector_members = get_int(c, "sectors");
  const auto ph = get_string(c, "phases");
  require(ph == "smooth" || ph == "iid", "phases must be smooth or iid");
  b.phases = ph == "smooth" ? PhaseMode::smooth : PhaseMode::iid;
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return b;
}

void bilinear_prepare(const json& c) {
  bilinear_config(c);
  get_double(c, "ratio_max");
}

void bilinear_execute(const json& c, RunContext& ctx) {
  auto cfg = bilinear_config(c);
  cfg.seed = ctx.seed();
  cfg.jobs = ctx.jobs();
  const auto table = empirical_bilinear_constant(cfg);
  ctx.write_csv("bilinear.csv", bilinear_csv(table));
  auto doc = without_timing(to_json(table));
  doc["diagonal_slope"] = table.diagonal_slope();
  ctx.write_json("bilinear.json", doc);
  const std::string slope = "diagonal log-log slope " + fmt(table.diagonal_slope());
  if (cfg.kind == NullFormKind::generic) {
    ctx.check("generic control grows", table.monotone_growth(), "monotone in N; " + slope);
  } else {
    const double q = table.diagonal_max_over_median(), lim = get_double(c, "ratio_max");
    ctx.check("bounded ratio", q <= lim, "diagonal max/median " + fmt(q) + " <= " + fmt(lim) + "; " + slope);
  }
}

// ---------------------------------------------------------------- picard

json picard_defaults() {
  return {{"L", 2.0 * pi}, {"N", 64},          {"T_span", 4.0},      {"N_t", 128},   {"s", 1.8},
          {"b", 0.9},      {"r", 1.25},        {"eps", 0.05},        {"T", 0.5},     {"amplitude", 0.01},
          {"kind", "q12"}, {"system", "cross"}, {"iterations", 6},   {"expect", "contracting"}, {"ratio_max", 0.5}};
}

PicardOptions picard_options(const json& c) {
  PicardOptions o;
  o.iterations = get_int(c, "iterations");
  o.norm = NormSpec{get_double(c, "s"), get_double(c, "b"), get_double(c, "r"), false};
  o.assembly.T = get_double(c, "T");
  o.assembly.b = get_double(c, "b");
  o.assembly.r = get_double(c, "r");
  o.assembly.eps = get_double(c, "eps");
  o.assembly.restore_initial_data = true;
  try {
    o.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return o;
}

void picard_prepare(const json& c) {
  spacetime_grid(c);
  picard_options(c);
  system_of(c);
  const auto e = get_string(c, "expect");
  require(e == "contracting" || e == "non-contracting" || e == "none", "expect must be contracting, non-contracting or none");
  get_double(c, "amplitude");
  get_double(c, "ratio_max");
}

void picard_execute(const json& c, RunContext& ctx) {
  const auto g = spacetime_grid(c);
  const auto system = system_of(c);
  const auto opt = picard_options(c);
  const auto res = picard_iterate(system, smooth_data(g, system.components, get_double(c, "amplitude")), g, opt);
  ctx.write_csv("picard.csv", picard_csv(res.trace));
  ctx.write_json("picard.json", without_timing(to_json(res.trace)));
  const double lim = get_double(c, "ratio_max");
  const bool contracting = res.trace.contracting(lim, 1);
  const auto expect = get_string(c, "expect");
  const std::string detail = std::string(contracting ? "contracting" : "not contracting") +
                             " (ratios d_{k+1}/d_k < " + fmt(lim) + " from the second on)" +
                             (res.trace.diverged ? ", diverged" : "");
  if (expect == "contracting") ctx.check("picard contracting", contracting, detail);
  if (expect == "non-contracting") ctx.check("picard flagged non-contracting", !contracting, detail);
  if (expect == "none") ctx.check("picard trace recorded", !res.trace.norms.empty(), detail);
}

// ---------------------------------------------------------------- solve

json solve_defaults() {
  return {{"L", 2.0 * pi}, {"N", 32},       {"kind", "q12"}, {"system", "cross"}, {"data", "smooth"},
          {"amplitude", 0.3}, {"roughness", 1.0}, {"r", 2.0}, {"t_end", 1.0}, {"dt", 0.025},
          {"sample_every", 1}, {"residual_tol", 1e-3}};
}

EvolveOptions evolve_options(const json& c) {
  EvolveOptions o;
  o.t_end = get_double(c, "t_end");
  o.dt = get_double(c, "dt");
  o.sample_every = get_int(c, "sample_every");
  return o;
}

void solve_prepare(const json& c) {
  const auto g = spatial_grid(c);
  system_of(c);
  const auto d = get_string(c, "data");
  require(d == "smooth" || d == "rough", "data must be smooth or rough");
  const auto o = evolve_options(c);
  require(o.dt > 0.0 && o.t_end > 0.0 && o.sample_every > 0, "t_end, dt and sample_every must be positive");
  require(o.dt <= max_stable_dt(g, o.cfl) * (1.0 + 1e-12),
          "dt exceeds the stability bound " + fmt(max_stable_dt(g, o.cfl)));
  const double steps = o.t_end / o.dt;
  require(std::abs(steps - std::round(steps)) < 1e-9 * steps, "t_end must be a multiple of dt");
  require(static_cast<long>(std::round(steps)) % o.sample_every == 0, "sample_every must divide the step count");
  require(std::round(steps) / o.sample_every >= 4, "need at least five samples for the residual");
  const double r = get_double(c, "r");
  require(r > 1.0 && r <= 2.0, "r must lie in (1, 2]");
  get_double(c, "amplitude");
  get_double(c, "roughness");
  get_double(c, "residual_tol");
}

void solve_execute(const json& c, RunContext& ctx) {
  const auto g = spatial_grid(c);
  const auto system = system_of(c);
  CauchyData data;
  if (get_string(c, "data") == "smooth") {
    data = smooth_data(g, system.components, get_double(c, "amplitude"));
  } else {
    for (int k = 0; k < system.components; ++k) {
      data.f.push_back(rough_data(g, get_double(c, "amplitude"), get_double(c, "roughness"), get_double(c, "r"),
                                  ctx.seed(), static_cast<std::uint64_t>(k)));
      data.g.emplace_back(g, Extent::spatial);
    }
  }
  const auto traj = evolve_nlw(system, data, evolve_options(c));
  write_trajectory(traj, ctx.out() / "trajectory", ctx.seed());
  ctx.record("trajectory.bin");
  ctx.record("trajectory.json");
  CsvTable series("solve_series", {"time", "l2", "energy"});
  double peak = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    double e = 0.0;
    for (int m = 0; m < system.components; ++m) e += wave_energy(traj.u[k][m], traj.ut[k][m]);
    const double n = l2_norm(traj.u[k]);
    peak = std::max(peak, n);
    series.add({format_double(traj.times[k]), format_double(n), format_double(e)});
  }
  ctx.write_csv("series.csv", series);
  const auto res = nlw_residual(traj, system);
  const double worst = *std::max_element(res.begin(), res.end()) / std::max(peak, 1e-300);
  const double tol = get_double(c, "residual_tol");
  ctx.check("equation residual", worst <= tol,
            "max fourth-order residual / max ||u|| = " + fmt(worst) + " <= " + fmt(tol));
}

// ---------------------------------------------------------------- ward

json ward_defaults() {
  return {{"L", 2.0 * pi}, {"N", 64},           {"n", 2},        {"data", "exponential"}, {"t_end", 1.0},
          {"dt", 1e-3},    {"sample_every", 100}, {"project", true}, {"inverse", "adjoint"},   {"drift_tol", 1e-6}};
}

WardOptions ward_options(const json& c) {
  WardOptions o;
  o.t_end = get_double(c, "t_end");
  o.dt = get_double(c, "dt");
  o.sample_every = get_int(c, "sample_every");
  o.project = get_bool(c, "project");
  const auto inv = get_string(c, "inverse");
  require(inv == "adjoint" || inv == "exact", "inverse must be adjoint or exact");
  o.inverse = inv == "adjoint" ? WardInverse::adjoint : WardInverse::exact;
  return o;
}

void ward_prepare(const json& c) {
  const auto g = spatial_grid(c);
  const auto o = ward_options(c);
  const int n = get_int(c, "n");
  require(n >= 1 && n <= 3, "matrix size n must be 1, 2 or 3");
  const auto d = get_string(c, "data");
  require(d == "exponential" || d == "identity", "data must be exponential or identity");
  require(o.dt > 0.0 && o.t_end > 0.0 && o.sample_every > 0, "t_end, dt and sample_every must be positive");
  require(o.dt <= max_stable_dt(g, o.cfl) * (1.0 + 1e-12),
          "dt exceeds the stability bound " + fmt(max_stable_dt(g, o.cfl)));
  get_double(c, "drift_tol");
}

void ward_execute(const json& c, RunContext& ctx) {
  const auto g = spatial_grid(c);
  const int n = get_int(c, "n");
  const bool identity = get_string(c, "data") == "identity";
  const auto initial = identity ? ward_identity(g, n) : ward_exponential(g, default_generator(n));
  const auto traj = evolve_ward(initial, ward_options(c));
  CsvTable samples("ward_samples", {"time", "unitarity_defect", "tangency_defect", "distance_from_initial"});
  for (std::size_t k = 0; k < traj.samples.size(); ++k)
    samples.add({format_double(traj.times[k]), format_double(unitarity_defect(traj.samples[k])),
                 format_double(tangency_defect(traj.samples[k])), format_double(ward_distance(traj.samples[k], initial))});
  ctx.write_csv("ward.csv", samples);
  CsvTable drift("ward_drift", {"step", "time", "drift"});
  for (std::size_t k = 0; k < traj.drift.size(); ++k)
    drift.add({std::to_string(k), format_double(static_cast<double>(k) * traj.dt), format_double(traj.drift[k])});
  ctx.write_csv("drift.csv", drift);
  const double worst = *std::max_element(traj.drift.begin(), traj.drift.end());
  const double tol = get_double(c, "drift_tol");
  ctx.check("unitarity drift", worst <= tol, "max_x ||J*J - I|| over the run " + fmt(worst) + " <= " + fmt(tol));
  if (identity) {
    const double d = ward_distance(traj.samples.back(), initial);
    ctx.check("identity stationary", d <= 1e-14, "distance from J = I at the end " + fmt(d));
  }
}

// ---------------------------------------------------------------- exponents

json exponents_defaults() { return {{"r", 1.5}, {"tol", 1e-14}}; }

void exponents_prepare(const json& c) {
  const double r = get_double(c, "r");
  require(r > 1.0 && r <= 2.0, "r must lie in (1, 2]");
  get_double(c, "tol");
}

void exponents_execute(const json& c, RunContext& ctx) {
  const auto t = exponent_feasibility(get_double(c, "r"));
  ctx.write_json("exponents.json", to_json(t));
  const double tol = get_double(c, "tol");
  ctx.check("young relation", std::abs(t.young_residual) <= tol, "residual " + fmt(t.young_residual));
  ctx.check("hoelder relation", std::abs(t.holder_residual) <= tol, "residual " + fmt(t.holder_residual));
  ctx.check("feasible", t.feasible(), "m = " + fmt(t.m) + " > 2 and l = " + fmt(t.l) + " > 2r");
}

}  // namespace

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> all = [] {
    auto never = [](const json&) { return false; };
    auto always = [](const json&) { return true; };
    return std::vector<Experiment>{
        {"norms", "Fourier-Lebesgue, X and Z norms of a test field; Parseval check at r = 2", norms_defaults(), never,
         norms_prepare, norms_execute},
        {"scaling", "homogeneous norm scaling and scaling covariance of the evolution", scaling_defaults(), never,
         scaling_prepare, scaling_execute},
        {"symbol-scan", "empirical constant of null-form symbol bounds on seeded on-cone samples", symbol_defaults(),
         always, symbol_prepare, symbol_execute},
        {"cone-scan", "cone integrals over dyadic |xi| and tau ratios", cone_defaults(), never, cone_prepare,
         cone_execute},
        {"bilinear", "empirical bilinear constants over dyadic annuli", bilinear_defaults(), always, bilinear_prepare,
         bilinear_execute},
        {"picard", "Picard iteration of the linear solution operator", picard_defaults(), never, picard_prepare,
         picard_execute},
        {"solve", "pseudospectral RK4 evolution of a null-form wave system", solve_defaults(),
         [](const json& c) { return c.value("data", "smooth") == "rough"; }, solve_prepare, solve_execute},
        {"ward", "Ward wave map evolution with unitarity diagnostics", ward_defaults(), never, ward_prepare,
         ward_execute},
        {"exponents", "epsilon interval and auxiliary exponents for a given r", exponents_defaults(), never,
         exponents_prepare, exponents_execute},
    };
  }();
  return all;
}

}  // namespace nullwave::cli
