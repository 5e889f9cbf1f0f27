#pragma once

#include <iosfwd>
#include <numbers>
#include <stdexcept>
#include <string>

#include "postprocess.hpp"

namespace stpe {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Convergence-study parameters. The defaults reproduce the reference
// benchmark: unit-square domain, T = 2, coarse slab 0.1, coarse mesh 4x4,
// equal-order k = r = 2.
struct StudyConfig {
  std::string scheme = "equal-order";  // or "taylor-hood"
  int k = 2;
  int r = 2;  // pressure order; taylor-hood uses r+1 for displacement/velocity
  int level_min = 0;
  int level_max = 3;
  double T = 2.0;
  double tau0 = 0.1;
  int cells0 = 4;
  double rho = 1.0;
  double alpha = 0.9;
  double c0 = 1e-3;
  double K1 = 1e-2, K2 = 1e-2;  // diagonal permeability entries
  double E = 100.0;
  double nu = 0.35;
  double omega1 = std::numbers::pi;
  double omega2 = std::numbers::pi;
  std::string output_dir = ".";
};

// Plain "key: value" file; '#' starts a comment. Unknown keys and malformed
// values raise ConfigError with the offending line.
StudyConfig load_config(const std::string& path);

// Applies one key/value pair (same keys as the config file).
void apply_override(StudyConfig& cfg, const std::string& key, const std::string& value);

void validate(const StudyConfig& cfg);

struct StudyResult {
  ConvergenceTable table;
  std::string csv_path;
  std::string md_path;  // empty unless markdown was requested
};

// Runs the refinement levels, collects both error norms per field, writes
// the CSV (and optionally a markdown table) into output_dir.
StudyResult run_study(const StudyConfig& cfg, bool emit_markdown = false,
                      std::ostream* log = nullptr);

}  // namespace stpe
