#include "context.hpp"

#include <cmath>

namespace nullwave::cli {

namespace {

const json& at(const json& config, const std::string& key) {
  if (!config.contains(key)) throw ConfigError("missing config key '" + key + "'");
  return config[key];
}

}  // namespace

double get_double(const json& config, const std::string& key) {
  const auto& v = at(config, key);
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number, got " + v.dump());
  return v.get<double>();
}

int get_int(const json& config, const std::string& key) {
  const auto& v = at(config, key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float() && std::nearbyint(v.get<double>()) == v.get<double>()) return static_cast<int>(v.get<double>());
  throw ConfigError("'" + key + "' must be an integer, got " + v.dump());
}

bool get_bool(const json& config, const std::string& key) {
  const auto& v = at(config, key);
  if (!v.is_boolean()) throw ConfigError("'" + key + "' must be true or false, got " + v.dump());
  return v.get<bool>();
}

std::string get_string(const json& config, const std::string& key) {
  const auto& v = at(config, key);
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string, got " + v.dump());
  return v.get<std::string>();
}

std::vector<double> get_doubles(const json& config, const std::string& key) {
  const auto& v = at(config, key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError("'" + key + "' must be a number list, got " + v.dump());
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError("'" + key + "' must be a number list, got " + v.dump());
    out.push_back(x.get<double>());
  }
  return out;
}

bool is_null(const json& config, const std::string& key) { return !config.contains(key) || config[key].is_null(); }

RunContext::RunContext(std::filesystem::path out, std::uint64_t seed, int jobs)
    : out_(std::move(out)), seed_(seed), jobs_(jobs) {}

void RunContext::write(const std::string& name, const std::string& content, bool deterministic) {
  write_file_atomic(out_ / name, content);
  artifacts_.push_back({name, git_blob_hash(content), deterministic});
}

void RunContext::write_json(const std::string& name, const json& document, bool deterministic) {
  write(name, document.dump(2) + "\n", deterministic);
}

void RunContext::write_csv(const std::string& name, const CsvTable& table) { write(name, table.str()); }

void RunContext::record(const std::string& name, bool deterministic) {
  artifacts_.push_back({name, git_blob_hash(read_file(out_ / name)), deterministic});
}

void RunContext::check(const std::string& name, bool passed, const std::string& detail) {
  assertions_.push_back({name, passed, detail});
}

}  // namespace nullwave::cli
