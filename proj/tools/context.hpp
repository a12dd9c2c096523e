#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullwave/report.hpp"

namespace nullwave::cli {

/// Anything wrong with the configuration itself (exit 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Typed reads of the flat config document; wrong or missing values are
// ConfigErrors so that they map to the config exit code.
double get_double(const json& config, const std::string& key);
int get_int(const json& config, const std::string& key);
bool get_bool(const json& config, const std::string& key);
std::string get_string(const json& config, const std::string& key);
std::vector<double> get_doubles(const json& config, const std::string& key);
bool is_null(const json& config, const std::string& key);

/// Output directory bookkeeping for one run.
class RunContext {
 public:
  RunContext(std::filesystem::path out, std::uint64_t seed, int jobs);

  const std::filesystem::path& out() const { return out_; }
  std::uint64_t seed() const { return seed_; }
  int jobs() const { return jobs_; }

  /// Writes an artifact atomically and records its hash.
  void write(const std::string& name, const std::string& content, bool deterministic = true);
  void write_json(const std::string& name, const json& document, bool deterministic = true);
  void write_csv(const std::string& name, const CsvTable& table);
  /// Records an artifact some other routine already wrote.
  void record(const std::string& name, bool deterministic = true);

  void check(const std::string& name, bool passed, const std::string& detail);

  const std::vector<Artifact>& artifacts() const { return artifacts_; }
  const std::vector<Assertion>& assertions() const { return assertions_; }

 private:
  std::filesystem::path out_;
  std::uint64_t seed_;
  int jobs_;
  std::vector<Artifact> artifacts_;
  std::vector<Assertion> assertions_;
};

/// A subcommand: default config (which also fixes the accepted keys and the
/// flags), whether it draws random numbers, and the experiment itself.
/// `prepare` validates the config up front and throws ConfigError; `execute`
/// runs it and writes artifacts.
struct Experiment {
  std::string name;
  std::string help;
  json defaults;
  std::function<bool(const json&)> randomized;
  std::function<void(const json&)> prepare;
  std::function<void(const json&, RunContext&)> execute;
};

const std::vector<Experiment>& experiments();

}  // namespace nullwave::cli
