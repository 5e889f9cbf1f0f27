#include "study.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "projection.hpp"

namespace stpe {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  if (value == "pi") return std::numbers::pi;
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for '" + key + "': " + value);
  }
}

std::string scheme_tag(const std::string& scheme) {
  std::string tag = scheme;
  std::replace(tag.begin(), tag.end(), '-', '_');
  return tag;
}

}  // namespace

void apply_override(StudyConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "scheme") {
    cfg.scheme = value;
  } else if (key == "k") {
    cfg.k = parse_int(key, value);
  } else if (key == "r") {
    cfg.r = parse_int(key, value);
  } else if (key == "levels") {
    size_t dots = value.find("..");
    if (dots == std::string::npos) {
      cfg.level_min = 0;
      cfg.level_max = parse_int(key, value);
    } else {
      cfg.level_min = parse_int(key, trim(value.substr(0, dots)));
      cfg.level_max = parse_int(key, trim(value.substr(dots + 2)));
    }
  } else if (key == "T") {
    cfg.T = parse_double(key, value);
  } else if (key == "tau0") {
    cfg.tau0 = parse_double(key, value);
  } else if (key == "cells0") {
    cfg.cells0 = parse_int(key, value);
  } else if (key == "rho") {
    cfg.rho = parse_double(key, value);
  } else if (key == "alpha") {
    cfg.alpha = parse_double(key, value);
  } else if (key == "c0") {
    cfg.c0 = parse_double(key, value);
  } else if (key == "K_diag") {
    size_t comma = value.find(',');
    if (comma == std::string::npos) {
      cfg.K1 = cfg.K2 = parse_double(key, value);
    } else {
      cfg.K1 = parse_double(key, trim(value.substr(0, comma)));
      cfg.K2 = parse_double(key, trim(value.substr(comma + 1)));
    }
  } else if (key == "E") {
    cfg.E = parse_double(key, value);
  } else if (key == "nu") {
    cfg.nu = parse_double(key, value);
  } else if (key == "omega1") {
    cfg.omega1 = parse_double(key, value);
  } else if (key == "omega2") {
    cfg.omega2 = parse_double(key, value);
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

StudyConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  StudyConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t sep = line.find(':');
    if (sep == std::string::npos) sep = line.find('=');
    if (sep == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(line.substr(0, sep));
    std::string value = trim(line.substr(sep + 1));
    try {
      apply_override(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

void validate(const StudyConfig& cfg) {
  if (cfg.scheme != "equal-order" && cfg.scheme != "taylor-hood")
    throw ConfigError("scheme must be 'equal-order' or 'taylor-hood'");
  if (cfg.k < 1) throw ConfigError("k must be >= 1");
  if (cfg.r < 1) throw ConfigError("r must be >= 1");
  if (cfg.level_min < 0 || cfg.level_max < cfg.level_min)
    throw ConfigError("levels must satisfy 0 <= min <= max");
  if (cfg.cells0 < 1) throw ConfigError("cells0 must be >= 1");
  if (cfg.T <= 0.0 || cfg.tau0 <= 0.0) throw ConfigError("T and tau0 must be positive");
  double n = cfg.T / cfg.tau0;
  if (std::abs(n - std::round(n)) > 1e-9) throw ConfigError("T must be a multiple of tau0");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
  // Material bounds match make_material; report them as config problems here.
  if (cfg.E <= 0.0 || cfg.nu <= 0.0 || cfg.nu >= 0.5 || cfg.rho <= 0.0 || cfg.alpha <= 0.0 ||
      cfg.c0 <= 0.0 || cfg.K1 <= 0.0 || cfg.K2 <= 0.0)
    throw ConfigError("material parameters out of range");
}

StudyResult run_study(const StudyConfig& cfg, bool emit_markdown, std::ostream* log) {
  validate(cfg);
  Mat2 K;
  K << cfg.K1, 0.0, 0.0, cfg.K2;
  MaterialParams mat = make_material(cfg.E, cfg.nu, cfg.rho, cfg.alpha, cfg.c0, K);
  ManufacturedSolution sol{cfg.omega1, cfg.omega2};
  SlabBasis basis = make_slab_basis(cfg.k);
  int rv = cfg.scheme == "taylor-hood" ? cfg.r + 1 : cfg.r;

  StudyResult result;
  result.table.scheme = cfg.scheme;
  result.table.k = cfg.k;
  result.table.r = cfg.r;
  result.table.T = cfg.T;
  result.table.tau0 = cfg.tau0;
  result.table.cells0 = cfg.cells0;

  Forcing forcing{[&](Vec2 x, double t) { return forcing_f(mat, sol, x, t); },
                  [&](Vec2 x, double t) { return forcing_g(mat, sol, x, t); }};

  Mesh mesh = build_mesh(cfg.cells0);
  for (int level = 0; level < cfg.level_min; ++level) mesh = refine(mesh);
  for (int level = cfg.level_min; level <= cfg.level_max; ++level) {
    FESpace V(mesh, rv, 2);
    FESpace Q(mesh, cfg.r, 1);
    SpatialQuadrature quad = tensor_quadrature(std::max(rv, cfg.r) + 1);
    OperatorBlocks blocks = assemble_blocks(V, Q, mat, quad);
    TimeMesh tm = build_time_mesh(cfg.T, cfg.tau0, level);
    SlabSystem sys = build_slab_system(blocks, basis, mat, tm.tau(0));
    EllipticProjector proj(V, Q, mat);
    InitialValues iv = initial_values(V, Q, proj, sol, InitialValueStrategy::elliptic_projection);
    if (log)
      (*log) << "level " << level << ": cells " << mesh.cells_per_side << "x"
             << mesh.cells_per_side << ", slabs " << tm.n_slabs() << ", unknowns "
             << sys.n_unknowns() << std::endl;
    MarchResult res = march(blocks, sys, basis, V, Q, quad, mat, forcing, tm,
                            std::move(iv.u0), std::move(iv.v0), std::move(iv.p0));

    auto shape = [&sol](Vec2 x) { return sol.shape(x); };
    SeparableExact ref_u{[&sol](double t) { return sol.time_factor(t); }, shape};
    SeparableExact ref_v{[&sol](double t) { return sol.time_factor_dt(t); }, shape};

    LevelErrors row;
    row.level = level;
    row.tau = tm.tau(0);
    row.h = mesh.h();
    row.u.l2l2 = l2l2_error_separable(res.u, V, ref_u, tm, basis);
    row.v.l2l2 = l2l2_error_separable(res.v, V, ref_v, tm, basis);
    row.p.l2l2 = l2l2_error_separable(res.p, Q, ref_u, tm, basis);
    row.u.linf = linf_l2_error_separable(res.u, V, ref_u, tm, basis);
    row.v.linf = linf_l2_error_separable(res.v, V, ref_v, tm, basis);
    row.p.linf = linf_l2_error_separable(res.p, Q, ref_u, tm, basis);
    result.table.rows.push_back(row);
    if (log)
      (*log) << "  l2l2 u " << row.u.l2l2 << "  v " << row.v.l2l2 << "  p " << row.p.l2l2
             << std::endl;
    if (level < cfg.level_max) mesh = refine(mesh);
  }

  std::filesystem::create_directories(cfg.output_dir);
  std::string stem = scheme_tag(cfg.scheme) + "_k" + std::to_string(cfg.k) + "_r" +
                     std::to_string(cfg.r);
  result.csv_path = cfg.output_dir + "/" + stem + ".csv";
  write_csv(result.table, result.csv_path);
  if (emit_markdown) {
    result.md_path = cfg.output_dir + "/" + stem + ".md";
    std::ofstream md(result.md_path, std::ios::binary);
    if (!md) throw IoError("cannot open " + result.md_path + " for writing");
    md << render_table(result.table, true);
  }
  return result;
}

}  // namespace stpe
