#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nullwave/bilinear.hpp"
#include "nullwave/cone.hpp"
#include "nullwave/exponents.hpp"
#include "nullwave/nullforms.hpp"
#include "nullwave/picard.hpp"
#include "nullwave/solver.hpp"
#include "nullwave/ward.hpp"

namespace nullwave {

using json = nlohmann::ordered_json;

inline constexpr int csv_schema_version = 1;
inline constexpr std::string_view library_version = "0.1.0";

std::string sha1_hex(std::string_view bytes);
/// SHA-1 of "blob <size>\0" + bytes, as git computes object ids.
std::string git_blob_hash(std::string_view bytes);
std::string read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// CSV with a "# schema_version=1 table=<name>" first row and a header row.
class CsvTable {
 public:
  CsvTable(std::string name, std::vector<std::string> columns);
  void add(const std::vector<std::string>& cells);
  std::string str() const;
  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

json to_json(const DominanceReport& r);
json to_json(const ScanReport& r);
json to_json(const BilinearTable& t);
json to_json(const ExponentTuple& t);
json to_json(const IterationTrace& t);
json to_json(const CancellationReport& r);

CsvTable dominance_csv(const std::vector<DominanceReport>& reports);
CsvTable scan_csv(const ScanReport& r);
CsvTable bilinear_csv(const BilinearTable& t);
CsvTable picard_csv(const IterationTrace& t);
CsvTable series_csv(const std::string& name, const std::string& column, const std::vector<double>& times,
                    const std::vector<double>& values);

/// Flat little-endian binary of every sample (per sample, per component:
/// u then u_t, interleaved re/im doubles) and a JSON sidecar with grid,
/// scheme, seed and the git-style hash of the binary. Returns the sidecar.
json write_trajectory(const Trajectory& trajectory, const std::filesystem::path& base, std::uint64_t seed);

struct Artifact {
  std::string path;  // relative to the run directory
  std::string hash;
  bool deterministic = true;
};

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunManifest {
  std::string subcommand;
  json config;
  std::uint64_t seed = 0;
  std::string config_hash;
  int jobs = 1;
  std::vector<Artifact> artifacts;
  std::vector<Assertion> assertions;
  double wall_seconds = 0.0;

  bool passed() const;
  json to_json() const;
  static RunManifest from_json(const json& j);
};

/// Hash of the canonical dump of a config document.
std::string config_hash(const json& config);

}  // namespace nullwave
