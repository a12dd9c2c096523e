#include "nullwave/report.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/sha.h>

namespace nullwave {

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string hex(const unsigned char* bytes, std::size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    out += digits[bytes[i] >> 4];
    out += digits[bytes[i] & 15];
  }
  return out;
}

}  // namespace

std::string sha1_hex(std::string_view bytes) {
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  return hex(digest, SHA_DIGEST_LENGTH);
}

std::string git_blob_hash(std::string_view bytes) {
  std::string blob = "blob " + std::to_string(bytes.size());
  blob.push_back('\0');
  blob.append(bytes);
  return sha1_hex(blob);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void CsvTable::add(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw std::invalid_argument("csv: row width differs from header");
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  std::string out = "# schema_version=" + std::to_string(csv_schema_version) + " table=" + name_ + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += "\n";
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

json to_json(const DominanceReport& r) {
  return {{"kind", to_string(r.kind)},
          {"regime", r.regime == Regime::elliptic ? "elliptic" : "hyperbolic"},
          {"samples", r.samples},
          {"seed", r.seed},
          {"c_emp", r.c_emp},
          {"worst_eta", {r.worst_eta[0], r.worst_eta[1]}},
          {"worst_zeta", {r.worst_zeta[0], r.worst_zeta[1]}},
          {"zero_bound", r.zero_bound},
          {"violations", r.violations}};
}

json to_json(const ScanReport& r) {
  json points = json::array();
  for (const auto& p : r.points) points.push_back({p.xi, p.tau, p.value, p.error});
  return {{"description", r.description},
          {"regime", to_string(r.regime)},
          {"kind", to_string(r.kind)},
          {"r", r.r},
          {"s1", r.s1},
          {"s2", r.s2},
          {"seed", r.seed},
          {"sup", finite_or_null(r.sup)},
          {"argmax", r.argmax},
          {"stable", r.stable()},
          {"scale_xi", r.scale_xi},
          {"scale_sup", r.scale_sup},
          {"oracle_errors", r.oracle_errors},
          {"points", points},
          {"wall_seconds", r.wall_seconds}};
}

json to_json(const BilinearTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows)
    rows.push_back({{"n1", row.n1},
                    {"n2", row.n2},
                    {"ratio", row.ratio},
                    {"numerator", row.numerator},
                    {"denominator", row.denominator},
                    {"skipped", row.skipped}});
  const auto& c = t.config;
  return {{"kind", to_string(c.kind)},
          {"signs", {c.sign_u, c.sign_v}},
          {"sigma", c.sigma},
          {"r", c.r},
          {"grid_n", c.grid_n},
          {"seed", c.seed},
          {"annulus_members", c.annulus_members},
          {"sector_members", c.sector_members},
          {"max", t.max},
          {"median", t.median},
          {"max_over_median", t.max_over_median()},
          {"diagonal_max_over_median", t.diagonal_max_over_median()},
          {"diagonal_slope", t.diagonal_slope()},
          {"monotone_growth", t.monotone_growth()},
          {"rows", rows},
          {"wall_seconds", t.wall_seconds}};
}

json to_json(const ExponentTuple& t) {
  return {{"r", t.r},
          {"r_prime", t.r_prime},
          {"eps_interval", {t.eps_lower, finite_or_null(t.eps_upper)}},
          {"eps_unbounded", std::isinf(t.eps_upper)},
          {"eps", t.eps},
          {"l", t.l},
          {"m", t.m},
          {"p", t.p},
          {"q", t.q},
          {"young_residual", t.young_residual},
          {"holder_residual", t.holder_residual},
          {"feasible", t.feasible()}};
}

json to_json(const IterationTrace& t) {
  json ratios = json::array();
  for (double r : t.ratios) ratios.push_back(finite_or_null(r));
  return {{"T", t.T},
          {"norms", t.norms},
          {"differences", t.differences},
          {"ratios", ratios},
          {"diverged", t.diverged},
          {"contracting", t.contracting()}};
}

json to_json(const CancellationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"kind", to_string(row.kind)},
                    {"roughness", row.roughness},
                    {"initial_norm", row.initial_norm},
                    {"max_norm", finite_or_null(row.max_norm)},
                    {"growth", finite_or_null(row.growth)},
                    {"aborted", row.aborted}});
  return {{"seed", r.seed}, {"rows", rows}};
}

CsvTable dominance_csv(const std::vector<DominanceReport>& reports) {
  CsvTable t("symbol_dominance", {"kind", "regime", "samples", "seed", "c_emp", "zero_bound", "violations"});
  for (const auto& r : reports)
    t.add({std::string(to_string(r.kind)), r.regime == Regime::elliptic ? "elliptic" : "hyperbolic",
           std::to_string(r.samples), std::to_string(r.seed), format_double(r.c_emp), std::to_string(r.zero_bound),
           std::to_string(r.violations)});
  return t;
}

CsvTable scan_csv(const ScanReport& r) {
  CsvTable t("cone_scan", {"xi", "tau", "value", "error"});
  for (const auto& p : r.points)
    t.add({format_double(p.xi), format_double(p.tau), format_double(p.value), format_double(p.error)});
  return t;
}

CsvTable bilinear_csv(const BilinearTable& table) {
  CsvTable t("bilinear", {"n1", "n2", "ratio", "numerator", "denominator", "skipped"});
  for (const auto& row : table.rows)
    t.add({std::to_string(row.n1), std::to_string(row.n2), format_double(row.ratio), format_double(row.numerator),
           format_double(row.denominator), row.skipped ? "1" : "0"});
  return t;
}

CsvTable picard_csv(const IterationTrace& trace) {
  CsvTable t("picard", {"iteration", "norm", "difference", "ratio"});
  for (std::size_t k = 0; k < trace.norms.size(); ++k) {
    const std::string d = k < trace.differences.size() ? format_double(trace.differences[k]) : "";
    const std::string q = k >= 1 && k - 1 < trace.ratios.size() ? format_double(trace.ratios[k - 1]) : "";
    t.add({std::to_string(k), format_double(trace.norms[k]), d, q});
  }
  return t;
}

CsvTable series_csv(const std::string& name, const std::string& column, const std::vector<double>& times,
                    const std::vector<double>& values) {
  if (times.size() != values.size()) throw std::invalid_argument("series_csv: length mismatch");
  CsvTable t(name, {"t", column});
  for (std::size_t k = 0; k < times.size(); ++k) t.add({format_double(times[k]), format_double(values[k])});
  return t;
}

json write_trajectory(const Trajectory& traj, const std::filesystem::path& base, std::uint64_t seed) {
  std::string bytes;
  auto put = [&](double v) {
    char raw[sizeof(double)];
    std::memcpy(raw, &v, sizeof v);
    bytes.append(raw, sizeof raw);
  };
  for (std::size_t k = 0; k < traj.u.size(); ++k)
    for (std::size_t c = 0; c < traj.u[k].size(); ++c)
      for (const auto* f : {&traj.u[k][c], &traj.ut[k][c]})
        for (const auto& v : f->values) {
          put(v.real());
          put(v.imag());
        }
  auto bin = base;
  bin += ".bin";
  write_file_atomic(bin, bytes);
  json side = {{"format", "float64 little-endian, [sample][component][u, u_t][x1][x2][re, im], spectral"},
               {"grid", {{"length", traj.grid.length}, {"n", traj.grid.n}}},
               {"scheme", "rk4 method of lines, spectral space, 2/3 dealiasing"},
               {"dt", traj.dt},
               {"sample_every", traj.sample_every},
               {"samples", traj.u.size()},
               {"components", traj.u.empty() ? 0 : traj.u.front().size()},
               {"times", traj.times},
               {"seed", seed},
               {"binary", bin.filename().string()},
               {"hash", git_blob_hash(bytes)}};
  auto sidecar = base;
  sidecar += ".json";
  write_file_atomic(sidecar, side.dump(2) + "\n");
  return side;
}

bool RunManifest::passed() const {
  for (const auto& a : assertions)
    if (!a.passed) return false;
  return true;
}

json RunManifest::to_json() const {
  json arts = json::array();
  for (const auto& a : artifacts) arts.push_back({{"path", a.path}, {"hash", a.hash}, {"deterministic", a.deterministic}});
  json checks = json::array();
  for (const auto& a : assertions) checks.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  return {{"subcommand", subcommand},
          {"config", config},
          {"seed", seed},
          {"config_hash", config_hash},
          {"jobs", jobs},
          {"versions", {{"nullwave", library_version}, {"compiler", __VERSION__}}},
          {"artifacts", arts},
          {"assertions", checks},
          {"passed", passed()},
          {"wall_seconds", wall_seconds}};
}

RunManifest RunManifest::from_json(const json& j) {
  RunManifest m;
  m.subcommand = j.at("subcommand").get<std::string>();
  m.config = j.at("config");
  m.seed = j.at("seed").get<std::uint64_t>();
  m.config_hash = j.at("config_hash").get<std::string>();
  m.jobs = j.value("jobs", 1);
  for (const auto& a : j.at("artifacts"))
    m.artifacts.push_back({a.at("path").get<std::string>(), a.at("hash").get<std::string>(),
                           a.value("deterministic", true)});
  for (const auto& a : j.at("assertions"))
    m.assertions.push_back({a.at("name").get<std::string>(), a.at("passed").get<bool>(), a.value("detail", "")});
  m.wall_seconds = j.value("wall_seconds", 0.0);
  return m;
}

std::string config_hash(const json& config) { return git_blob_hash(config.dump()); }

}  // namespace nullwave
