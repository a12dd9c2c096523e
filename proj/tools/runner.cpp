#include "runner.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "context.hpp"

namespace nullwave::cli {

namespace fs = std::filesystem;

namespace {

const Experiment& find_experiment(const std::string& name) {
  for (const auto& e : experiments())
    if (e.name == name) return e;
  throw ConfigError("unknown subcommand '" + name + "'");
}

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

// Flag text to a JSON value: JSON literals and numbers as such, comma lists
// of numbers as arrays, anything else as a string.
json parse_flag_value(const std::string& text) {
  try {
    auto v = json::parse(text);
    if (!v.is_object()) return v;
  } catch (const json::parse_error&) {
  }
  if (text.find(',') != std::string::npos) {
    json arr = json::array();
    std::stringstream ss(text);
    std::string item;
    bool numeric = true;
    while (std::getline(ss, item, ',')) {
      const auto v = parse_number(item);
      if (!v) {
        numeric = false;
        break;
      }
      arr.push_back(*v);
    }
    if (numeric) return arr;
  }
  return text;
}

std::uint64_t parse_seed(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  throw ConfigError("seed must be a non-negative integer");
}

std::uint64_t config_seed(const json& config) { return config.contains("seed") ? parse_seed(config["seed"]) : 0; }

json merge_config(const Experiment& exp, const std::string& config_path, const std::map<std::string, std::string>& flags,
                  const std::optional<std::string>& seed_flag) {
  json merged = exp.defaults;
  if (!config_path.empty()) {
    json file;
    try {
      file = json::parse(read_file(config_path));
    } catch (const json::parse_error& e) {
      throw ConfigError("config " + config_path + ": " + e.what());
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    if (!file.is_object()) throw ConfigError("config " + config_path + " is not a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (key == "subcommand") {
        if (value != exp.name) throw ConfigError("config is for subcommand " + value.dump() + ", not " + exp.name);
      } else if (key == "seed") {
        merged["seed"] = parse_seed(value);
      } else if (exp.defaults.contains(key)) {
        merged[key] = value;
      } else {
        throw ConfigError("unknown config key '" + key + "' for " + exp.name);
      }
    }
  }
  for (const auto& [key, text] : flags) merged[key] = parse_flag_value(text);
  if (seed_flag) {
    const auto v = parse_flag_value(*seed_flag);
    merged["seed"] = parse_seed(v);
  }
  if (!merged.contains("seed") && exp.randomized(merged))
    throw ConfigError(exp.name + " draws random samples with this config; a seed is required (--seed)");
  return merged;
}

struct RunOutcome {
  int code = exit_pass;
  RunManifest manifest;
};

RunOutcome execute(const Experiment& exp, const json& config, const fs::path& out, int jobs) {
  RunOutcome result;
  try {
    exp.prepare(config);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    result.code = exit_config;
    return result;
  }
  const auto start = std::chrono::steady_clock::now();
  try {
    fs::create_directories(out);
    RunContext ctx(out, config_seed(config), jobs);
    ctx.write_json("config.json", config);
    exp.execute(config, ctx);
    auto& m = result.manifest;
    m.subcommand = exp.name;
    m.config = config;
    m.seed = ctx.seed();
    m.config_hash = config_hash(config);
    m.jobs = jobs;
    m.artifacts = ctx.artifacts();
    m.assertions = ctx.assertions();
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file_atomic(out / "manifest.json", m.to_json().dump(2) + "\n");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    result.code = exit_config;
    return result;
  } catch (const std::exception& e) {
    std::cerr << "runtime fault: " << e.what() << "\n";
    result.code = exit_runtime;
    return result;
  }
  for (const auto& a : result.manifest.assertions)
    std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << ": " << a.detail << "\n";
  std::cout << "manifest: " << (out / "manifest.json").string() << "\n";
  result.code = result.manifest.passed() ? exit_pass : exit_assertion;
  return result;
}

bool numbers_close(double a, double b) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

bool json_close(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) return numbers_close(a.get<double>(), b.get<double>());
  if (a.type() != b.type()) return false;
  if (a.is_object()) {
    if (a.size() != b.size()) return false;
    for (const auto& [k, v] : a.items())
      if (!b.contains(k) || !json_close(v, b[k])) return false;
    return true;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!json_close(a[i], b[i])) return false;
    return true;
  }
  return a == b;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

bool csv_close(const std::string& a, const std::string& b) {
  const auto la = split(a, '\n'), lb = split(b, '\n');
  if (la.size() != lb.size()) return false;
  for (std::size_t i = 0; i < la.size(); ++i) {
    const auto ca = split(la[i], ','), cb = split(lb[i], ',');
    if (ca.size() != cb.size()) return false;
    for (std::size_t k = 0; k < ca.size(); ++k) {
      if (ca[k] == cb[k]) continue;
      const auto x = parse_number(ca[k]), y = parse_number(cb[k]);
      if (!x || !y || !numbers_close(*x, *y)) return false;
    }
  }
  return true;
}

bool artifacts_close(const fs::path& a, const fs::path& b) {
  const auto ta = read_file(a), tb = read_file(b);
  if (ta == tb) return true;
  if (a.extension() == ".csv") return csv_close(ta, tb);
  if (a.extension() == ".json") {
    try {
      return json_close(json::parse(ta), json::parse(tb));
    } catch (const json::parse_error&) {
      return false;
    }
  }
  return false;
}

int replay(const fs::path& manifest_path, const std::string& out_override, std::optional<int> jobs_override) {
  RunManifest m;
  try {
    m = RunManifest::from_json(json::parse(read_file(manifest_path)));
  } catch (const std::exception& e) {
    std::cerr << "config error: cannot read manifest " << manifest_path.string() << ": " << e.what() << "\n";
    return exit_config;
  }
  const Experiment* exp = nullptr;
  try {
    exp = &find_experiment(m.subcommand);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  }
  const fs::path dir = manifest_path.parent_path().empty() ? fs::path(".") : manifest_path.parent_path();
  std::uint64_t recorded = 0;
  try {
    recorded = config_seed(m.config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  }
  if (recorded != m.seed) {
    std::cerr << "seed mismatch: manifest records seed " << m.seed << " but the config snapshot has seed " << recorded
              << "\n";
    return exit_assertion;
  }
  if (config_hash(m.config) != m.config_hash) {
    std::cerr << "config mismatch: snapshot hash " << config_hash(m.config) << " differs from recorded "
              << m.config_hash << "\n";
    return exit_assertion;
  }
  if (!fs::exists(dir / "config.json")) {
    std::cerr << "missing file: " << (dir / "config.json").string() << "\n";
    return exit_assertion;
  }
  const fs::path out = out_override.empty() ? fs::path(dir.string() + ".replay") : fs::path(out_override);
  const int jobs = jobs_override.value_or(m.jobs);
  std::cout << "replaying " << m.subcommand << " with seed " << m.seed << " into " << out.string() << "\n";
  const auto fresh = execute(*exp, m.config, out, jobs);
  if (fresh.code == exit_config || fresh.code == exit_runtime) return fresh.code;

  const bool bitwise = m.jobs == 1 && jobs == 1;
  bool ok = true;
  for (const auto& a : m.artifacts) {
    if (!a.deterministic) continue;
    const auto original = dir / a.path;
    if (!fs::exists(original)) {
      std::cout << "MISSING " << a.path << "\n";
      ok = false;
      continue;
    }
    if (git_blob_hash(read_file(original)) != a.hash) {
      std::cout << "MODIFIED " << a.path << " (hash differs from manifest)\n";
      ok = false;
      continue;
    }
    const Artifact* match = nullptr;
    for (const auto& b : fresh.manifest.artifacts)
      if (b.path == a.path) match = &b;
    bool same = false;
    if (match != nullptr) same = bitwise ? match->hash == a.hash : artifacts_close(original, out / a.path);
    std::cout << (same ? "MATCH " : "MISMATCH ") << a.path << (bitwise ? " (bitwise)" : " (1e-12 relative)") << "\n";
    ok = ok && same;
  }
  std::cout << (ok ? "replay PASS" : "replay FAIL") << "\n";
  return ok ? exit_pass : exit_assertion;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"nullwave: null-form wave equation experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(library_version));

  std::string config_path, out_dir, seed_text;
  int jobs = 1;
  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, std::map<std::string, CLI::Option*>> flag_options;
  std::map<std::string, CLI::Option*> seed_options;
  for (const auto& e : experiments()) {
    auto* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", config_path, "flat JSON config; flags override its values");
    seed_options[e.name] = sub->add_option("--seed", seed_text, "RNG seed (u64)");
    sub->add_option("--out", out_dir, "output directory (default nullwave-out/<subcommand>)");
    sub->add_option("--jobs", jobs, "worker cap")->check(CLI::PositiveNumber);
    for (const auto& [key, value] : e.defaults.items())
      flag_options[e.name][key] = sub->add_option("--" + key, flag_values[e.name][key], "default " + value.dump());
  }
  std::string manifest_path, replay_out;
  std::optional<int> replay_jobs;
  auto* rep = app.add_subcommand("replay", "re-run a recorded manifest and compare its artifacts");
  rep->add_option("manifest", manifest_path, "manifest.json of a previous run")->required();
  rep->add_option("--out", replay_out, "output directory (default <run>.replay)");
  auto* rep_jobs = rep->add_option("--jobs", jobs, "worker cap (default: recorded)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  if (rep->parsed()) {
    if (rep_jobs->count() > 0) replay_jobs = jobs;
    return replay(manifest_path, replay_out, replay_jobs);
  }
  for (const auto& e : experiments()) {
    if (!app.got_subcommand(e.name)) continue;
    std::map<std::string, std::string> given;
    for (const auto& [key, opt] : flag_options[e.name])
      if (opt->count() > 0) given[key] = flag_values[e.name][key];
    std::optional<std::string> seed;
    if (seed_options[e.name]->count() > 0) seed = seed_text;
    json config;
    try {
      config = merge_config(e, config_path, given, seed);
    } catch (const std::exception& ex) {
      std::cerr << "config error: " << ex.what() << "\n";
      return exit_config;
    }
    const fs::path out = out_dir.empty() ? fs::path("nullwave-out") / e.name : fs::path(out_dir);
    return execute(e, config, out, jobs).code;
  }
  return exit_config;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"nullwave"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace nullwave::cli
