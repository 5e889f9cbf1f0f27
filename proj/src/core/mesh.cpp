#include "mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace stpe {

double Mesh::h() const { return std::sqrt(2.0) / cells_per_side; }

Vec2 Mesh::cell_origin(int cell) const {
  int cx = cell % cells_per_side;
  int cy = cell / cells_per_side;
  double s = cell_side();
  return {cx * s, cy * s};
}

Mesh build_mesh(int cells_per_side) {
  if (cells_per_side < 1) throw std::invalid_argument("build_mesh: need at least one cell per side");
  Mesh m;
  m.cells_per_side = cells_per_side;
  int n = cells_per_side;
  int nv = n + 1;
  m.vertices.reserve(nv * nv);
  m.boundary_vertex.reserve(nv * nv);
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nv; ++i) {
      m.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
      m.boundary_vertex.push_back(i == 0 || i == n || j == 0 || j == n);
    }
  }
  m.cells.reserve(n * n);
  for (int cy = 0; cy < n; ++cy) {
    for (int cx = 0; cx < n; ++cx) {
      int v0 = cy * nv + cx;
      m.cells.push_back({v0, v0 + 1, v0 + 1 + nv, v0 + nv});
    }
  }
  return m;
}

Mesh refine(const Mesh& mesh) { return build_mesh(2 * mesh.cells_per_side); }

void dump(const Mesh& mesh, std::ostream& out) {
  out << "mesh " << mesh.cells_per_side << "x" << mesh.cells_per_side << "\n";
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    out << "v " << i << " " << mesh.vertices[i].x() << " " << mesh.vertices[i].y()
        << (mesh.boundary_vertex[i] ? " b" : "") << "\n";
  }
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& q = mesh.cells[c];
    out << "c " << c << " " << q[0] << " " << q[1] << " " << q[2] << " " << q[3] << "\n";
  }
}

}  // namespace stpe
