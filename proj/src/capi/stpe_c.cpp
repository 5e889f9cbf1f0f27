#include "stpe.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <ostream>
#include <sstream>
#include <streambuf>
#include <string>

#include "selftest.hpp"
#include "solver.hpp"
#include "study.hpp"
#include "types.hpp"

#ifndef STPE_VERSION_STRING
#define STPE_VERSION_STRING "0.0.0"
#endif

struct stpe_study {
  stpe::StudyConfig cfg;
  std::optional<stpe::StudyResult> result;
  void (*log_fn)(const char*, void*) = nullptr;
  void* log_user = nullptr;
};

namespace {

thread_local std::string g_last_error;

stpe_status set_error(stpe_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

stpe_status invalid(const char* message) {
  return set_error(STPE_ERR_INVALID_ARGUMENT, message);
}

// Maps the library's exception hierarchy onto status codes.
template <class Fn>
stpe_status guarded(Fn&& fn) {
  try {
    fn();
    return STPE_OK;
  } catch (const stpe::ConfigError& e) {
    return set_error(STPE_ERR_CONFIG, e.what());
  } catch (const stpe::SolverError& e) {
    return set_error(STPE_ERR_SOLVER, e.what());
  } catch (const stpe::IoError& e) {
    return set_error(STPE_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(STPE_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return set_error(STPE_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(STPE_ERR_INTERNAL, "unknown error");
  }
}

// Splits stream output into lines and hands each to the registered callback.
class LineBuf : public std::streambuf {
 public:
  LineBuf(void (*fn)(const char*, void*), void* user) : fn_(fn), user_(user) {}
  ~LineBuf() override {
    if (!line_.empty()) fn_(line_.c_str(), user_);
  }

 protected:
  int overflow(int ch) override {
    if (ch == traits_type::eof()) return 0;
    if (ch == '\n') {
      fn_(line_.c_str(), user_);
      line_.clear();
    } else {
      line_.push_back(static_cast<char>(ch));
    }
    return ch;
  }

 private:
  void (*fn_)(const char*, void*);
  void* user_;
  std::string line_;
};

char* copy_to_c(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* stpe_version(void) { return STPE_VERSION_STRING; }

const char* stpe_last_error(void) { return g_last_error.c_str(); }

stpe_study* stpe_study_create(void) {
  try {
    return new stpe_study;
  } catch (...) {
    return nullptr;
  }
}

void stpe_study_destroy(stpe_study* study) { delete study; }

stpe_status stpe_study_load_config(stpe_study* study, const char* path) {
  if (!study) return invalid("study handle is null");
  if (!path) return invalid("config path is null");
  return guarded([&] { study->cfg = stpe::load_config(path); });
}

stpe_status stpe_study_set(stpe_study* study, const char* key, const char* value) {
  if (!study) return invalid("study handle is null");
  if (!key || !value) return invalid("key/value must not be null");
  return guarded([&] { stpe::apply_override(study->cfg, key, value); });
}

stpe_status stpe_study_set_log(stpe_study* study,
                               void (*line_fn)(const char* line, void* user), void* user) {
  if (!study) return invalid("study handle is null");
  study->log_fn = line_fn;
  study->log_user = user;
  return STPE_OK;
}

stpe_status stpe_study_run(stpe_study* study, int emit_markdown) {
  if (!study) return invalid("study handle is null");
  return guarded([&] {
    std::optional<LineBuf> buf;
    std::optional<std::ostream> log;
    if (study->log_fn) {
      buf.emplace(study->log_fn, study->log_user);
      log.emplace(&*buf);
    }
    study->result = stpe::run_study(study->cfg, emit_markdown != 0,
                                    log ? &*log : nullptr);
  });
}

int stpe_study_rows(const stpe_study* study) {
  if (!study || !study->result) return 0;
  return static_cast<int>(study->result->table.rows.size());
}

stpe_status stpe_study_row(const stpe_study* study, int row, int* level, double* tau,
                           double* h, double errors[6]) {
  if (!study) return invalid("study handle is null");
  if (!study->result) return invalid("study has not been run");
  const auto& rows = study->result->table.rows;
  if (row < 0 || row >= static_cast<int>(rows.size())) return invalid("row out of range");
  const stpe::LevelErrors& r = rows[row];
  if (level) *level = r.level;
  if (tau) *tau = r.tau;
  if (h) *h = r.h;
  if (errors) {
    errors[0] = r.u.l2l2;
    errors[1] = r.v.l2l2;
    errors[2] = r.p.l2l2;
    errors[3] = r.u.linf;
    errors[4] = r.v.linf;
    errors[5] = r.p.linf;
  }
  return STPE_OK;
}

stpe_status stpe_study_csv_path(const stpe_study* study, const char** path) {
  if (!study) return invalid("study handle is null");
  if (!path) return invalid("path out-pointer is null");
  if (!study->result) return invalid("study has not been run");
  *path = study->result->csv_path.c_str();
  return STPE_OK;
}

stpe_status stpe_study_render_table(const stpe_study* study, int markdown, char** text) {
  if (!study) return invalid("study handle is null");
  if (!text) return invalid("text out-pointer is null");
  if (!study->result) return invalid("study has not been run");
  return guarded([&] {
    std::string rendered = stpe::render_table(study->result->table, markdown != 0);
    *text = copy_to_c(rendered);
    if (!*text) throw std::bad_alloc();
  });
}

stpe_status stpe_self_test(char** report, int* failures) {
  int failed = 0;
  std::string lines;
  stpe_status status = guarded([&] {
    for (const stpe::SelfCheck& c : stpe::run_self_test()) {
      lines += c.passed ? "[ OK ] " : "[FAIL] ";
      lines += c.name + ": " + c.detail + "\n";
      if (!c.passed) ++failed;
    }
  });
  if (failures) *failures = failed;
  if (report) {
    *report = copy_to_c(lines);
    if (!*report) return set_error(STPE_ERR_INTERNAL, "out of memory");
  }
  if (status != STPE_OK) return status;
  if (failed > 0)
    return set_error(STPE_ERR_SELFTEST, std::to_string(failed) + " self-test check(s) failed");
  return STPE_OK;
}

void stpe_string_free(char* text) { std::free(text); }

}  // extern "C"
