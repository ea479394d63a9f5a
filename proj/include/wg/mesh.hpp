// 2D triangular meshes with globally oriented edge data.
//
// Every edge carries one fixed unit normal n_e, derived from the vertex
// order alone, so that the trace unknowns attached to the edge are
// single-valued. Elements relate their outward normal to n_e through the
// sign sigma = n_T . n_e, stored per (triangle, local edge).

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "wg/geometry.hpp"

namespace wg {

struct Edge {
  std::array<int, 2> v{-1, -1};      // vertex ids, v[0] < v[1]
  Vec2 normal;                       // unit normal, rotate(a->b tangent, -90deg)
  double length = 0.0;
  bool on_boundary = false;
  std::array<int, 2> tris{-1, -1};   // adjacent triangles, tris[1] = -1 on boundary
};

/// Triangular mesh. Immutable after construction; all connectivity is
/// recomputed deterministically from (vertices, triangles).
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;       // CCW vertex ids
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> tri_edges;       // local edge i joins vertices (i, i+1 mod 3)
  std::vector<std::array<int, 3>> tri_edge_sign;   // sigma = n_T . n_e, +-1

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_boundary_edges() const;

  Triangle triangle_geometry(int t) const;
  EdgeGeometry edge_geometry(int e) const;
  double total_area() const;
  double max_diameter() const;
};

/// Build connectivity (edges, adjacency, signs) from vertices and CCW
/// triangles. Throws on inverted elements or non-manifold edges.
Mesh build_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles);

/// Uniform n x n criss-cross mesh of the unit square: each sub-square is
/// split by its negative-slope diagonal, h = 1/n.
Mesh build_unit_square_mesh(int n);

/// Initial 6-triangle mesh of the L-shaped domain (-1,1)^2 \ [0,1)x(-1,0],
/// three unit squares each split by the negative-slope diagonal. The
/// triangulation is symmetric about the line y = -x through the reentrant
/// corner (0,0).
Mesh build_lshape_initial();

/// Replace each triangle by the 4 congruent children obtained by
/// connecting edge midpoints.
Mesh refine_uniform(const Mesh& m);

struct MeshReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Check every mesh invariant (orientation, adjacency, Euler formula,
/// normals, signs, boundary flags) and report violations.
MeshReport validate(const Mesh& m);

// Text format: "wgmesh 1" header, a vertex section and a triangle section.
// Edges and normals are always recomputed on load.
void write_mesh(const Mesh& m, std::ostream& out);
void write_mesh(const Mesh& m, const std::string& path);
Mesh read_mesh(std::istream& in);
Mesh read_mesh(const std::string& path);

}  // namespace wg
