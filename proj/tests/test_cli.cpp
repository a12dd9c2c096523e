#include "doctest.h"
#include "runner.hpp"
#include "nullwave/report.hpp"

#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;
using nullwave::json;
using namespace nullwave::cli;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / "nullwave_cli_test" / name;
  fs::remove_all(p);
  fs::remove_all(p.string() + ".replay");
  return p;
}

int cli(std::vector<std::string> args) { return run(args); }

json load(const fs::path& p) { return json::parse(nullwave::read_file(p)); }

}  // namespace

TEST_CASE("exit codes") {
  const auto out = scratch("codes");
  CHECK(cli({"exponents", "--r", "1.5", "--out", (out / "e").string()}) == exit_pass);
  CHECK(fs::exists(out / "e" / "manifest.json"));
  CHECK(load(out / "e" / "exponents.json").at("eps_interval") == json::array({0.0, 3.0}));

  CHECK(cli({"norms", "--r", "1.5", "--out", (out / "n").string()}) == exit_config);
  CHECK(cli({"symbol-scan", "--samples", "100", "--out", (out / "s").string()}) == exit_config);
  CHECK(cli({"norms", "--no_such_key", "1"}) == exit_config);
  CHECK(cli({"no-such-command"}) == exit_config);

  fs::create_directories(out);
  std::ofstream(out / "bad.json") << R"({"subcommand": "norms", "bogus": 1})";
  CHECK(cli({"norms", "--config", (out / "bad.json").string(), "--out", (out / "b").string()}) == exit_config);
  std::ofstream(out / "good.json") << R"({"subcommand": "norms", "N": 16, "N_t": 16})";
  CHECK(cli({"norms", "--config", (out / "good.json").string(), "--out", (out / "g").string()}) == exit_pass);
  CHECK(load(out / "g" / "config.json").at("N") == 16);

  CHECK(cli({"picard", "--N", "16", "--N_t", "64", "--iterations", "4", "--expect", "non-contracting", "--out",
             (out / "p").string()}) == exit_assertion);
  CHECK(cli({"solve", "--N", "16", "--kind", "q0", "--amplitude", "40", "--t_end", "2", "--dt", "0.02", "--out",
             (out / "x").string()}) == exit_runtime);
}

TEST_CASE("replay reproduces a seeded run and detects tampering") {
  const auto out = scratch("replay");
  const std::vector<std::string> base = {"symbol-scan", "--samples", "2000", "--seed", "11", "--out", out.string()};
  REQUIRE(cli(base) == exit_pass);
  const auto manifest = (out / "manifest.json").string();
  CHECK(cli({"replay", manifest}) == exit_pass);
  CHECK(cli({"replay", manifest, "--jobs", "3", "--out", out.string() + ".par"}) == exit_pass);

  auto m = load(manifest);
  m["seed"] = 12;
  nullwave::write_file_atomic(manifest, m.dump(2));
  CHECK(cli({"replay", manifest}) == exit_assertion);
  CHECK(cli({"replay", (out / "missing.json").string()}) == exit_config);
  fs::remove_all(out.string() + ".par");
}

TEST_CASE("replay catches an edited artifact") {
  const auto out = scratch("artifact");
  REQUIRE(cli({"exponents", "--r", "1.25", "--out", out.string()}) == exit_pass);
  auto m = load(out / "manifest.json");
  for (auto& a : m["artifacts"])
    if (a["path"] == "exponents.json") a["hash"] = "0000";
  nullwave::write_file_atomic(out / "manifest.json", m.dump(2));
  CHECK(cli({"replay", (out / "manifest.json").string()}) == exit_assertion);
}

TEST_CASE("cone scan matches the pinned baseline") {
  const auto out = scratch("cone");
  CHECK(cli({"cone-scan", "--baseline", std::string(NULLWAVE_TEST_DATA) + "/cone_scan_q12_elliptic_r2.csv", "--out",
             out.string(), "--jobs", "4"}) == exit_pass);
  CHECK(fs::exists(out / "cone_scan.csv"));
}
