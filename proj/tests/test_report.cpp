#include "doctest.h"
#include "nullwave/report.hpp"

#include <filesystem>

using namespace nullwave;

TEST_CASE("hashes match git and SHA-1 test vectors") {
  CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
  CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
  CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST_CASE("csv tables carry the schema row") {
  CsvTable t("demo", {"a", "b"});
  t.add({"1", format_double(0.1)});
  CHECK(t.str() == "# schema_version=1 table=demo\na,b\n1,0.1\n");
  CHECK_THROWS(t.add({"1"}));
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("manifest round trip and atomic writes") {
  RunManifest m;
  m.subcommand = "norms";
  m.config = {{"r", 2.0}, {"N", 32}};
  m.seed = 42;
  m.config_hash = config_hash(m.config);
  m.jobs = 3;
  m.artifacts = {{"norms.json", git_blob_hash("{}"), true}, {"timing.json", "x", false}};
  m.assertions = {{"ok", true, ""}, {"bad", false, "detail"}};
  const auto back = RunManifest::from_json(m.to_json());
  CHECK(back.subcommand == "norms");
  CHECK(back.seed == 42);
  CHECK(back.jobs == 3);
  CHECK(back.config == m.config);
  CHECK(back.config_hash == m.config_hash);
  REQUIRE(back.artifacts.size() == 2);
  CHECK_FALSE(back.artifacts[1].deterministic);
  REQUIRE(back.assertions.size() == 2);
  CHECK(back.assertions[1].detail == "detail");
  CHECK_FALSE(back.passed());
  m.assertions.pop_back();
  CHECK(m.passed());

  const auto dir = std::filesystem::temp_directory_path() / "nullwave_report_test";
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "a.txt", "first");
  write_file_atomic(dir / "a.txt", "second");
  CHECK(read_file(dir / "a.txt") == "second");
  std::filesystem::remove_all(dir);
}

TEST_CASE("trajectory sidecar hashes the binary") {
  Trajectory t;
  t.grid = make_grid(2.0 * pi, 4, pi, 2);
  t.dt = 0.1;
  t.times = {0.0, 0.1};
  SpectralField f(t.grid, Extent::spatial);
  f(1, 2) = {1.0, -2.0};
  t.u = {{f}, {f}};
  t.ut = {{f}, {f}};
  const auto dir = std::filesystem::temp_directory_path() / "nullwave_traj_test";
  std::filesystem::create_directories(dir);
  const auto side = write_trajectory(t, dir / "trajectory", 5);
  const auto bin = read_file(dir / "trajectory.bin");
  CHECK(bin.size() == 2u * 2u * 16u * 16u);
  CHECK(side.dump().find(git_blob_hash(bin)) != std::string::npos);
  std::filesystem::remove_all(dir);
}
