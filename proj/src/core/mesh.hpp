#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "types.hpp"

namespace stpe {

// Uniform conforming quadrilateral mesh of the unit square (0,1)^2.
// Vertices are numbered lexicographically by (y, x); cells by (cy, cx).
struct Mesh {
  int cells_per_side = 0;
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 4>> cells;  // counterclockwise from lower-left corner
  std::vector<bool> boundary_vertex;

  int n_cells() const { return cells_per_side * cells_per_side; }
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  double cell_side() const { return 1.0 / cells_per_side; }
  // Cell diameter; every cell is a square of side 1/N.
  double h() const;
  Vec2 cell_origin(int cell) const;  // lower-left corner
};

Mesh build_mesh(int cells_per_side);

// Splits every cell into four congruent squares.
Mesh refine(const Mesh& mesh);

// Plain-text dump of vertices and cell connectivity, for debugging.
void dump(const Mesh& mesh, std::ostream& out);

}  // namespace stpe
