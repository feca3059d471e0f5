#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thiim/config.hpp"

using namespace thiim;

TEST_CASE("grid and shape parsing") {
  CHECK(parse_grid("64") == GridDims(64, 64, 64));
  CHECK(parse_grid("64x128x64") == GridDims(64, 128, 64));
  CHECK_THROWS_AS(parse_grid("64y64y64"), ConfigError);
  const ThreadGroupShape s = parse_shape("2x1x3");
  CHECK(s.tgz == 2);
  CHECK(s.tgx == 1);
  CHECK(s.tgc == 3);
  CHECK_THROWS_AS(parse_shape("2-1-3"), ConfigError);
}

TEST_CASE("config file round-trips") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "thiim_cfg_test";
  fs::create_directories(dir);
  BenchConfig cfg;
  cfg.grid = GridDims(48, 96, 48);
  cfg.steps = 12;
  cfg.engine = "spatial";
  cfg.dw = 16;
  cfg.bz = 3;
  cfg.shape = {2, 3, 1};
  cfg.threads = 6;
  cfg.profile.bandwidth_gbs = 37.5;
  cfg.seed = 42;

  const fs::path file = dir / "bench.cfg";
  {
    std::ofstream out(file);
    out << cfg.serialize();
  }
  const BenchConfig back = BenchConfig::from_file(file.string());
  CHECK(back.serialize() == cfg.serialize());

  CHECK_THROWS_AS(BenchConfig::from_file((dir / "missing.cfg").string()),
                  ConfigError);
  {
    std::ofstream out(file);
    out << "grid = 16\nbogus_key = 1\n";
  }
  CHECK_THROWS_AS(BenchConfig::from_file(file.string()), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("report emission: JSONL rows plus CSV with header") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "thiim_report_test";
  fs::remove_all(dir);

  std::vector<RunReport> reports;
  for (int i = 0; i < 3; ++i) {
    RunReport r;
    r.engine = i == 0 ? "spatial" : "mwd";
    r.dims = GridDims(32, 32, 32);
    r.steps = r.steps_executed = 4;
    r.threads = 2;
    r.balance_model = i == 0 ? 1216.0 : 211.0;
    r.mlups = 100.0 + i;
    r.predicted_mlups = 41.1;
    reports.push_back(r);
  }
  emit_reports(reports, dir.string());

  std::ifstream jsonl(dir / "reports.jsonl");
  std::string line;
  int json_lines = 0;
  while (std::getline(jsonl, line))
    if (!line.empty()) {
      ++json_lines;
      CHECK(line.find("\"schema\":\"run-report/1\"") != std::string::npos);
    }
  CHECK(json_lines == 3);

  std::ifstream csv(dir / "reports.csv");
  std::vector<std::string> rows;
  while (std::getline(csv, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);  // header + 3
  CHECK(rows[0] == report_csv_header());
  CHECK(rows[1].find("spatial") == 0);
  CHECK(rows[1].find(",1216,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("environment overrides") {
  BenchConfig cfg;
  setenv("THIIM_THREADS", "7", 1);
  setenv("THIIM_REPORT_DIR", "/tmp/thiim_reports", 1);
  cfg.apply_env_overrides();
  CHECK(cfg.threads == 7);
  CHECK(cfg.report_dir == "/tmp/thiim_reports");
  unsetenv("THIIM_THREADS");
  unsetenv("THIIM_REPORT_DIR");
}
