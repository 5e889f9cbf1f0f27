#include "postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace stpe {

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

// Nodal coefficients combined at reference time s.
Vector combine(const std::vector<Vector>& nodes, const SlabBasis& basis, double s) {
  std::vector<double> l(basis.k + 1);
  basis.trial.values(s, l.data());
  Vector out = l[0] * nodes[0];
  for (int j = 1; j <= basis.k; ++j) out += l[j] * nodes[j];
  return out;
}

// Squared spatial L2 distance between a coefficient vector and a reference
// field at fixed time, integrated cell by cell.
double sq_error_scalar(const FESpace& Q, const SpatialQuadrature& quad,
                       const FESpace::BasisTable& tab, const Vector& coeffs,
                       const std::function<double(Vec2, double)>& exact, double t) {
  int nl = Q.n_local_scalar();
  double side = Q.mesh().cell_side();
  double area = side * side;
  double acc = 0.0;
  for (int cell = 0; cell < Q.mesh().n_cells(); ++cell) {
    Vec2 origin = Q.mesh().cell_origin(cell);
    for (int q = 0; q < quad.size(); ++q) {
      double vh = 0.0;
      for (int l = 0; l < nl; ++l) vh += coeffs[Q.cell_scalar_dof(cell, l)] * tab.val(q, l);
      Vec2 x = origin + side * Vec2(quad.x[q], quad.y[q]);
      double d = exact(x, t) - vh;
      acc += area * quad.w[q] * d * d;
    }
  }
  return acc;
}

double sq_error_vector(const FESpace& V, const SpatialQuadrature& quad,
                       const FESpace::BasisTable& tab, const Vector& coeffs,
                       const std::function<Vec2(Vec2, double)>& exact, double t) {
  int nl = V.n_local_scalar();
  int n_sc = V.n_scalar_dofs();
  double side = V.mesh().cell_side();
  double area = side * side;
  double acc = 0.0;
  for (int cell = 0; cell < V.mesh().n_cells(); ++cell) {
    Vec2 origin = V.mesh().cell_origin(cell);
    for (int q = 0; q < quad.size(); ++q) {
      Vec2 vh = Vec2::Zero();
      for (int l = 0; l < nl; ++l) {
        int g = V.cell_scalar_dof(cell, l);
        vh.x() += coeffs[g] * tab.val(q, l);
        vh.y() += coeffs[n_sc + g] * tab.val(q, l);
      }
      Vec2 x = origin + side * Vec2(quad.x[q], quad.y[q]);
      Vec2 d = exact(x, t) - vh;
      acc += area * quad.w[q] * d.squaredNorm();
    }
  }
  return acc;
}

template <typename SqError>
double l2l2_sampled(const Trajectory& X, const TimeMesh& tm, const SlabBasis& basis,
                    SqError&& sq) {
  Quadrature1D tq = gauss_legendre(basis.k + 3);
  double acc = 0.0;
  for (int n = 0; n < tm.n_slabs(); ++n) {
    for (int g = 0; g < tq.size(); ++g) {
      double s = tq.points[g];
      Vector coeffs = combine(X.nodes[n], basis, s);
      acc += 0.5 * tm.tau(n) * tq.weights[g] * sq(coeffs, tm.from_ref(n, s));
    }
  }
  return std::sqrt(acc);
}

template <typename SqError>
double linf_sampled(const Trajectory& X, const TimeMesh& tm, const SlabBasis& basis, int samples,
                    SqError&& sq) {
  Quadrature1D tq = gauss_legendre(samples);
  double worst = 0.0;
  for (int n = 0; n < tm.n_slabs(); ++n) {
    for (int g = 0; g < tq.size(); ++g) {
      double s = tq.points[g];
      Vector coeffs = combine(X.nodes[n], basis, s);
      worst = std::max(worst, sq(coeffs, tm.from_ref(n, s)));
    }
  }
  return std::sqrt(worst);
}

// Precomputed spatial pieces of ||S(t) shape - X(t)||^2
//   = S^2 a - 2 S b.X(t) + X(t)^T M X(t).
struct SeparableWork {
  double a = 0;
  Vector b;
  SparseMatrix M;
};

SeparableWork make_separable_work(const FESpace& space, const SeparableExact& ref) {
  SpatialQuadrature quad = tensor_quadrature(space.order() + 3);
  SeparableWork w;
  w.M = assemble_mass(space, quad);
  if (space.components() == 2) {
    w.b = assemble_vector_load(space, quad, [&](Vec2 x) {
      double s = ref.shape(x);
      return Vec2(s, s);
    });
  } else {
    w.b = assemble_scalar_load(space, quad, ref.shape);
  }
  double side = space.mesh().cell_side();
  double area = side * side;
  double acc = 0.0;
  for (int cell = 0; cell < space.mesh().n_cells(); ++cell) {
    Vec2 origin = space.mesh().cell_origin(cell);
    for (int q = 0; q < quad.size(); ++q) {
      double s = ref.shape(origin + side * Vec2(quad.x[q], quad.y[q]));
      acc += area * quad.w[q] * s * s;
    }
  }
  w.a = space.components() * acc;
  return w;
}

// Gram numbers of one slab's nodal vectors.
struct SlabGram {
  Vector c;  // c_j = b . X_j
  Matrix Q;  // Q(j,j') = X_j . (M X_j')
};

SlabGram make_slab_gram(const SeparableWork& w, const std::vector<Vector>& nodes) {
  int n = static_cast<int>(nodes.size());
  SlabGram g;
  g.c.resize(n);
  g.Q.resize(n, n);
  std::vector<Vector> mx(n);
  for (int j = 0; j < n; ++j) {
    g.c[j] = w.b.dot(nodes[j]);
    mx[j] = w.M * nodes[j];
  }
  for (int j = 0; j < n; ++j)
    for (int j2 = 0; j2 < n; ++j2) g.Q(j, j2) = nodes[j].dot(mx[j2]);
  return g;
}

double sq_error_separable(const SlabGram& g, const SeparableWork& w, const SlabBasis& basis,
                          double S, double s_ref) {
  std::vector<double> l(basis.k + 1);
  basis.trial.values(s_ref, l.data());
  double cross = 0.0, quad = 0.0;
  for (int j = 0; j <= basis.k; ++j) {
    cross += l[j] * g.c[j];
    for (int j2 = 0; j2 <= basis.k; ++j2) quad += l[j] * l[j2] * g.Q(j, j2);
  }
  return std::max(0.0, S * S * w.a - 2.0 * S * cross + quad);
}

}  // namespace

double l2l2_error_scalar(const Trajectory& X, const FESpace& Q,
                         const std::function<double(Vec2, double)>& exact, const TimeMesh& tm,
                         const SlabBasis& basis) {
  SpatialQuadrature quad = tensor_quadrature(Q.order() + 3);
  auto tab = Q.tabulate(quad);
  return l2l2_sampled(X, tm, basis, [&](const Vector& c, double t) {
    return sq_error_scalar(Q, quad, tab, c, exact, t);
  });
}

double l2l2_error_vector(const Trajectory& X, const FESpace& V,
                         const std::function<Vec2(Vec2, double)>& exact, const TimeMesh& tm,
                         const SlabBasis& basis) {
  SpatialQuadrature quad = tensor_quadrature(V.order() + 3);
  auto tab = V.tabulate(quad);
  return l2l2_sampled(X, tm, basis, [&](const Vector& c, double t) {
    return sq_error_vector(V, quad, tab, c, exact, t);
  });
}

double linf_l2_error_scalar(const Trajectory& X, const FESpace& Q,
                            const std::function<double(Vec2, double)>& exact, const TimeMesh& tm,
                            const SlabBasis& basis, int samples_per_slab) {
  SpatialQuadrature quad = tensor_quadrature(Q.order() + 3);
  auto tab = Q.tabulate(quad);
  return linf_sampled(X, tm, basis, samples_per_slab, [&](const Vector& c, double t) {
    return sq_error_scalar(Q, quad, tab, c, exact, t);
  });
}

double linf_l2_error_vector(const Trajectory& X, const FESpace& V,
                            const std::function<Vec2(Vec2, double)>& exact, const TimeMesh& tm,
                            const SlabBasis& basis, int samples_per_slab) {
  SpatialQuadrature quad = tensor_quadrature(V.order() + 3);
  auto tab = V.tabulate(quad);
  return linf_sampled(X, tm, basis, samples_per_slab, [&](const Vector& c, double t) {
    return sq_error_vector(V, quad, tab, c, exact, t);
  });
}

double l2l2_error_separable(const Trajectory& X, const FESpace& space, const SeparableExact& ref,
                            const TimeMesh& tm, const SlabBasis& basis,
                            int quad_points_per_slab) {
  SeparableWork w = make_separable_work(space, ref);
  Quadrature1D tq = gauss_legendre(quad_points_per_slab > 0 ? quad_points_per_slab : basis.k + 3);
  double acc = 0.0;
  for (int n = 0; n < tm.n_slabs(); ++n) {
    SlabGram g = make_slab_gram(w, X.nodes[n]);
    for (int q = 0; q < tq.size(); ++q) {
      double s = tq.points[q];
      double S = ref.time_factor(tm.from_ref(n, s));
      acc += 0.5 * tm.tau(n) * tq.weights[q] * sq_error_separable(g, w, basis, S, s);
    }
  }
  return std::sqrt(acc);
}

double linf_l2_error_separable(const Trajectory& X, const FESpace& space,
                               const SeparableExact& ref, const TimeMesh& tm,
                               const SlabBasis& basis, int samples_per_slab) {
  SeparableWork w = make_separable_work(space, ref);
  Quadrature1D tq = gauss_legendre(samples_per_slab);
  double worst = 0.0;
  for (int n = 0; n < tm.n_slabs(); ++n) {
    SlabGram g = make_slab_gram(w, X.nodes[n]);
    for (int q = 0; q < tq.size(); ++q) {
      double s = tq.points[q];
      double S = ref.time_factor(tm.from_ref(n, s));
      worst = std::max(worst, sq_error_separable(g, w, basis, S, s));
    }
  }
  return std::sqrt(worst);
}

std::vector<double> eoc(const std::vector<double>& errors) {
  std::vector<double> out;
  for (size_t i = 1; i < errors.size(); ++i) out.push_back(std::log2(errors[i - 1] / errors[i]));
  return out;
}

double energy_instant(const OperatorBlocks& blocks, const MaterialParams& mat, const Vector& u,
                      const Vector& v, const Vector& p) {
  return 0.5 * mat.rho * v.dot(blocks.Mu * v) + u.dot(blocks.Ae * u) +
         0.5 * mat.c0 * p.dot(blocks.Mp * p);
}

double energy_cumulative(const MarchResult& sol, const OperatorBlocks& blocks,
                         const MaterialParams& mat, const TimeMesh& tm, const SlabBasis& basis,
                         double t) {
  t = std::min(t, tm.T);
  if (t <= 0.0) return 0.0;
  Quadrature1D g = gauss_legendre(basis.k + 2);
  double acc = 0.0;
  for (int n = 0; n < tm.n_slabs(); ++n) {
    double left = tm.times[n];
    double right = std::min(tm.times[n + 1], t);
    if (right <= left) break;
    for (int q = 0; q < g.size(); ++q) {
      double tq = left + 0.5 * (g.points[q] + 1.0) * (right - left);
      double s = tm.to_ref(n, tq);
      Vector u = combine(sol.u.nodes[n], basis, s);
      Vector v = combine(sol.v.nodes[n], basis, s);
      Vector p = combine(sol.p.nodes[n], basis, s);
      acc += 0.5 * (right - left) * g.weights[q] * energy_instant(blocks, mat, u, v, p);
    }
  }
  return acc;
}

void write_csv(const ConvergenceTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "level,tau,h,l2l2_u,l2l2_v,l2l2_p,linf_u,linf_v,linf_p,"
         "eoc_l2l2_u,eoc_l2l2_v,eoc_l2l2_p,eoc_linf_u,eoc_linf_v,eoc_linf_p\n";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const LevelErrors& row = table.rows[i];
    out << row.level << ',' << format("%.10e", row.tau) << ',' << format("%.10e", row.h);
    for (double e : {row.u.l2l2, row.v.l2l2, row.p.l2l2, row.u.linf, row.v.linf, row.p.linf})
      out << ',' << format("%.10e", e);
    if (i == 0) {
      out << ",,,,,,";
    } else {
      const LevelErrors& prev = table.rows[i - 1];
      for (auto [ep, ec] : {std::pair{prev.u.l2l2, row.u.l2l2}, {prev.v.l2l2, row.v.l2l2},
                            {prev.p.l2l2, row.p.l2l2}, {prev.u.linf, row.u.linf},
                            {prev.v.linf, row.v.linf}, {prev.p.linf, row.p.linf}})
        out << ',' << format("%.4f", std::log2(ep / ec));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

void render_block(std::string& s, const ConvergenceTable& table, bool markdown, bool linf) {
  const char* title = linf ? "Linf(L2) errors" : "L2(L2) errors";
  if (markdown) {
    s += std::string("**") + title + "**\n\n";
    s += "| lvl | tau | h | u | EOC | v | EOC | p | EOC |\n";
    s += "|---|---|---|---|---|---|---|---|---|\n";
  } else {
    s += std::string(title) + "\n";
    s += " lvl        tau          h           u    EOC           v    EOC           p    EOC\n";
  }
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const LevelErrors& row = table.rows[i];
    double eu = linf ? row.u.linf : row.u.l2l2;
    double ev = linf ? row.v.linf : row.v.l2l2;
    double ep = linf ? row.p.linf : row.p.l2l2;
    std::string ru = "  ---", rv = "  ---", rp = "  ---";
    if (i > 0) {
      const LevelErrors& prev = table.rows[i - 1];
      ru = format("%5.2f", std::log2((linf ? prev.u.linf : prev.u.l2l2) / eu));
      rv = format("%5.2f", std::log2((linf ? prev.v.linf : prev.v.l2l2) / ev));
      rp = format("%5.2f", std::log2((linf ? prev.p.linf : prev.p.l2l2) / ep));
    }
    char buf[256];
    if (markdown) {
      std::snprintf(buf, sizeof(buf), "| %d | %.3e | %.3e | %.4e | %s | %.4e | %s | %.4e | %s |\n",
                    row.level, row.tau, row.h, eu, ru.c_str(), ev, rv.c_str(), ep, rp.c_str());
    } else {
      std::snprintf(buf, sizeof(buf), "%4d  %.3e  %.3e  %.4e  %s  %.4e  %s  %.4e  %s\n",
                    row.level, row.tau, row.h, eu, ru.c_str(), ev, rv.c_str(), ep, rp.c_str());
    }
    s += buf;
  }
  s += "\n";
}

}  // namespace

std::string render_table(const ConvergenceTable& table, bool markdown) {
  char head[256];
  std::snprintf(head, sizeof(head), "scheme=%s k=%d r=%d T=%g tau0=%g cells0=%d\n\n",
                table.scheme.c_str(), table.k, table.r, table.T, table.tau0, table.cells0);
  std::string s = head;
  render_block(s, table, markdown, false);
  render_block(s, table, markdown, true);
  return s;
}

void write_trajectory_csv(const Trajectory& X, const TimeMesh& tm, const SlabBasis& basis,
                          const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "slab,node,t";
  long n_coeff = X.nodes.empty() ? 0 : X.nodes[0][0].size();
  for (long c = 0; c < n_coeff; ++c) out << ",c" << c;
  out << '\n';
  for (int n = 0; n < X.n_slabs(); ++n) {
    for (int j = 0; j <= X.k; ++j) {
      double t = tm.from_ref(n, basis.rule.points[j]);
      out << n << ',' << j << ',' << format("%.10e", t);
      for (long c = 0; c < n_coeff; ++c) out << ',' << format("%.10e", X.nodes[n][j][c]);
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace stpe
