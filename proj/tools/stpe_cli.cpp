// Command-line front end. Talks to the solver exclusively through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stpe.h"

namespace {

int exit_code_for(stpe_status status) {
  switch (status) {
    case STPE_OK:
      return 0;
    case STPE_ERR_CONFIG:
    case STPE_ERR_INVALID_ARGUMENT:
      return 1;
    case STPE_ERR_SELFTEST:
      return 3;
    default:
      return 2;  // solver, IO, internal
  }
}

int fail(stpe_status status) {
  std::fprintf(stderr, "error: %s\n", stpe_last_error());
  return exit_code_for(status);
}

void progress_line(const char* line, void*) { std::fprintf(stderr, "%s\n", line); }

int run_self_test_mode() {
  char* report = nullptr;
  int failures = 0;
  stpe_status status = stpe_self_test(&report, &failures);
  if (report) {
    std::fputs(report, stdout);
    stpe_string_free(report);
  }
  if (status == STPE_OK) {
    std::printf("all checks passed\n");
    return 0;
  }
  if (status == STPE_ERR_SELFTEST) {
    std::printf("%d check(s) failed\n", failures);
    return 3;
  }
  return fail(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time convergence studies for dynamic poroelasticity"};
  app.set_version_flag("--version", std::string(stpe_version()));

  std::string config, scheme, levels, output_dir;
  int k = 0, r = 0;
  std::vector<std::string> overrides;
  bool emit_markdown = false, self_test = false, quiet = false;

  app.add_option("-c,--config", config, "configuration file (key: value lines)")
      ->check(CLI::ExistingFile);
  app.add_option("--scheme", scheme, "equal-order or taylor-hood");
  app.add_option("--k", k, "temporal polynomial degree");
  app.add_option("--r", r, "spatial polynomial degree (pressure)");
  app.add_option("--levels", levels, "refinement range, e.g. 0..3");
  app.add_option("-o,--output-dir", output_dir, "directory for CSV/markdown output");
  app.add_option("--set", overrides, "extra key=value override (repeatable)")
      ->type_name("KEY=VALUE");
  app.add_flag("--emit-markdown", emit_markdown, "also write the table as markdown");
  app.add_flag("--self-test", self_test, "run built-in verification checks and exit");
  app.add_flag("-q,--quiet", quiet, "suppress per-level progress on stderr");

  CLI11_PARSE(app, argc, argv);

  if (self_test) return run_self_test_mode();

  stpe_study* study = stpe_study_create();
  if (!study) {
    std::fprintf(stderr, "error: out of memory\n");
    return 2;
  }
  struct Guard {
    stpe_study* s;
    ~Guard() { stpe_study_destroy(s); }
  } guard{study};

  stpe_status status;
  if (!config.empty()) {
    status = stpe_study_load_config(study, config.c_str());
    if (status != STPE_OK) return fail(status);
  }

  auto set = [&](const char* key, const std::string& value) {
    return stpe_study_set(study, key, value.c_str());
  };
  if (!scheme.empty() && (status = set("scheme", scheme)) != STPE_OK) return fail(status);
  if (app.count("--k") && (status = set("k", std::to_string(k))) != STPE_OK)
    return fail(status);
  if (app.count("--r") && (status = set("r", std::to_string(r))) != STPE_OK)
    return fail(status);
  if (!levels.empty() && (status = set("levels", levels)) != STPE_OK) return fail(status);
  if (!output_dir.empty() && (status = set("output_dir", output_dir)) != STPE_OK)
    return fail(status);
  for (const std::string& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects KEY=VALUE, got '%s'\n", kv.c_str());
      return 1;
    }
    status = stpe_study_set(study, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (status != STPE_OK) return fail(status);
  }

  if (!quiet) stpe_study_set_log(study, progress_line, nullptr);

  status = stpe_study_run(study, emit_markdown ? 1 : 0);
  if (status != STPE_OK) return fail(status);

  char* table = nullptr;
  status = stpe_study_render_table(study, 0, &table);
  if (status != STPE_OK) return fail(status);
  std::fputs(table, stdout);
  stpe_string_free(table);

  const char* csv = nullptr;
  if (stpe_study_csv_path(study, &csv) == STPE_OK)
    std::printf("\nresults written to %s\n", csv);
  return 0;
}
