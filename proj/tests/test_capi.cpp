#include <cctype>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>

#include "stpe.h"

TEST_CASE("version and argument guards") {
  const char* v = stpe_version();
  REQUIRE(v != nullptr);
  CHECK(std::isdigit(static_cast<unsigned char>(v[0])));
  CHECK(std::string(v).find('.') != std::string::npos);

  CHECK(stpe_study_load_config(nullptr, "x") == STPE_ERR_INVALID_ARGUMENT);
  CHECK(stpe_study_set(nullptr, "k", "1") == STPE_ERR_INVALID_ARGUMENT);
  CHECK(stpe_study_rows(nullptr) == 0);
  CHECK(std::strlen(stpe_last_error()) > 0);
}

TEST_CASE("configuration errors surface through the status codes") {
  stpe_study* s = stpe_study_create();
  REQUIRE(s != nullptr);
  CHECK(stpe_study_set(s, "k", nullptr) == STPE_ERR_INVALID_ARGUMENT);
  CHECK(stpe_study_set(s, "wibble", "3") == STPE_ERR_CONFIG);
  CHECK(std::string(stpe_last_error()).find("unknown key") != std::string::npos);
  CHECK(stpe_study_set(s, "k", "fast") == STPE_ERR_CONFIG);
  CHECK(stpe_study_load_config(s, "/nonexistent/stpe.cfg") == STPE_ERR_CONFIG);

  double errors[6];
  CHECK(stpe_study_row(s, 0, nullptr, nullptr, nullptr, errors) == STPE_ERR_INVALID_ARGUMENT);
  const char* path = nullptr;
  CHECK(stpe_study_csv_path(s, &path) == STPE_ERR_INVALID_ARGUMENT);

  // An inconsistent setting is accepted eagerly and rejected at run time.
  CHECK(stpe_study_set(s, "tau0", "0.3") == STPE_OK);
  CHECK(stpe_study_run(s, 0) == STPE_ERR_CONFIG);
  stpe_study_destroy(s);
}

TEST_CASE("a full study through the shared interface") {
  stpe_study* s = stpe_study_create();
  REQUIRE(s != nullptr);
  std::string out = (std::filesystem::temp_directory_path() / "stpe_capi_test").string();
  CHECK(stpe_study_set(s, "k", "1") == STPE_OK);
  CHECK(stpe_study_set(s, "r", "1") == STPE_OK);
  CHECK(stpe_study_set(s, "cells0", "2") == STPE_OK);
  CHECK(stpe_study_set(s, "T", "0.2") == STPE_OK);
  CHECK(stpe_study_set(s, "levels", "0..0") == STPE_OK);
  CHECK(stpe_study_set(s, "output_dir", out.c_str()) == STPE_OK);

  std::vector<std::string> log;
  stpe_study_set_log(
      s,
      [](const char* line, void* user) {
        static_cast<std::vector<std::string>*>(user)->push_back(line);
      },
      &log);

  REQUIRE(stpe_study_run(s, 0) == STPE_OK);
  CHECK(!log.empty());
  REQUIRE(stpe_study_rows(s) == 1);

  int level = -1;
  double tau = 0.0, h = 0.0, errors[6] = {0, 0, 0, 0, 0, 0};
  REQUIRE(stpe_study_row(s, 0, &level, &tau, &h, errors) == STPE_OK);
  CHECK(level == 0);
  CHECK(tau == doctest::Approx(0.1));
  for (double e : errors) CHECK(e > 0.0);
  CHECK(stpe_study_row(s, 1, &level, &tau, &h, errors) == STPE_ERR_INVALID_ARGUMENT);

  const char* csv = nullptr;
  REQUIRE(stpe_study_csv_path(s, &csv) == STPE_OK);
  CHECK(std::filesystem::exists(csv));

  char* table = nullptr;
  REQUIRE(stpe_study_render_table(s, 0, &table) == STPE_OK);
  REQUIRE(table != nullptr);
  CHECK(std::string(table).find("L2") != std::string::npos);
  stpe_string_free(table);

  stpe_study_destroy(s);
  std::filesystem::remove_all(out);
}

TEST_CASE("built-in checks run through the shared interface") {
  char* report = nullptr;
  int failures = -1;
  stpe_status status = stpe_self_test(&report, &failures);
  REQUIRE(report != nullptr);
  CHECK(status == STPE_OK);
  CHECK(failures == 0);
  CHECK(std::string(report).find("[ OK ]") != std::string::npos);
  stpe_string_free(report);
}
