#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <doctest.h>

#include "study.hpp"

using namespace stpe;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config files accept colon or equals and comments") {
  std::string path = write_temp("stpe_cfg_ok.cfg",
                                "# benchmark, smaller box\n"
                                "scheme: taylor-hood\n"
                                "k = 1\n"
                                "levels: 1..2\n"
                                "omega2: pi\n"
                                "K_diag: 0.02, 0.03\n"
                                "\n"
                                "T: 0.4\n");
  StudyConfig cfg = load_config(path);
  CHECK(cfg.scheme == "taylor-hood");
  CHECK(cfg.k == 1);
  CHECK(cfg.level_min == 1);
  CHECK(cfg.level_max == 2);
  CHECK(cfg.omega2 == doctest::Approx(std::numbers::pi));
  CHECK(cfg.K1 == doctest::Approx(0.02));
  CHECK(cfg.K2 == doctest::Approx(0.03));
  CHECK(cfg.T == doctest::Approx(0.4));
  CHECK(cfg.r == 2);  // untouched default
  std::remove(path.c_str());
}

TEST_CASE("config errors carry the file position") {
  std::string path = write_temp("stpe_cfg_bad.cfg", "k: 2\nwibble: 3\n");
  CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains(":2:"), ConfigError);
  std::remove(path.c_str());

  std::string path2 = write_temp("stpe_cfg_bad2.cfg", "tau0: fast\n");
  CHECK_THROWS_AS(load_config(path2), ConfigError);
  std::remove(path2.c_str());

  CHECK_THROWS_AS(load_config("/nonexistent/stpe.cfg"), ConfigError);
}

TEST_CASE("single-value overrides") {
  StudyConfig cfg;
  apply_override(cfg, "levels", "2");
  CHECK(cfg.level_min == 0);
  CHECK(cfg.level_max == 2);
  apply_override(cfg, "K_diag", "0.5");
  CHECK(cfg.K1 == doctest::Approx(0.5));
  CHECK(cfg.K2 == doctest::Approx(0.5));
  apply_override(cfg, "output_dir", "results");
  CHECK(cfg.output_dir == "results");
  CHECK_THROWS_AS(apply_override(cfg, "mesh", "tri"), ConfigError);
}

TEST_CASE("validation rejects inconsistent settings") {
  StudyConfig cfg;
  cfg.k = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = StudyConfig{};
  cfg.T = 1.0;
  cfg.tau0 = 0.3;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = StudyConfig{};
  cfg.scheme = "dg";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = StudyConfig{};
  cfg.nu = 0.7;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  validate(StudyConfig{});  // defaults are consistent
}

TEST_CASE("a small study runs, converges, and writes stable csv") {
  StudyConfig cfg;
  cfg.k = 1;
  cfg.r = 1;
  cfg.cells0 = 2;
  cfg.T = 0.2;
  cfg.tau0 = 0.1;
  cfg.level_min = 0;
  cfg.level_max = 1;
  cfg.output_dir = (std::filesystem::temp_directory_path() / "stpe_study_test").string();

  StudyResult res = run_study(cfg);
  REQUIRE(res.table.rows.size() == 2);
  CHECK(res.csv_path.find("equal_order_k1_r1.csv") != std::string::npos);
  for (const LevelErrors& row : res.table.rows) {
    CHECK(row.u.l2l2 > 0.0);
    CHECK(row.v.linf > 0.0);
    CHECK(std::isfinite(row.p.l2l2));
  }
  CHECK(res.table.rows[1].u.l2l2 < res.table.rows[0].u.l2l2);
  CHECK(res.table.rows[1].v.l2l2 < res.table.rows[0].v.l2l2);

  std::string first = slurp(res.csv_path);
  CHECK(!first.empty());
  StudyResult again = run_study(cfg);
  CHECK(first == slurp(again.csv_path));

  std::ostringstream log;
  run_study(cfg, true, &log);
  CHECK(log.str().find("level 0") != std::string::npos);
  CHECK(std::filesystem::exists(cfg.output_dir + "/equal_order_k1_r1.md"));
  std::filesystem::remove_all(cfg.output_dir);
}
