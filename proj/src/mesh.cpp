#include "wg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace wg {

int Mesh::n_boundary_edges() const {
  int n = 0;
  for (const Edge& e : edges) n += e.on_boundary ? 1 : 0;
  return n;
}

Triangle Mesh::triangle_geometry(int t) const {
  const auto& tv = triangles[t];
  return Triangle::from_vertices(vertices[tv[0]], vertices[tv[1]], vertices[tv[2]]);
}

EdgeGeometry Mesh::edge_geometry(int e) const {
  const Edge& ed = edges[e];
  return EdgeGeometry::from_endpoints(vertices[ed.v[0]], vertices[ed.v[1]]);
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < n_triangles(); ++t) a += triangle_geometry(t).area;
  return a;
}

double Mesh::max_diameter() const {
  double h = 0.0;
  for (int t = 0; t < n_triangles(); ++t) h = std::max(h, triangle_geometry(t).diameter);
  return h;
}

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

Mesh build_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles) {
  Mesh m;
  m.vertices = std::move(vertices);
  m.triangles = std::move(triangles);

  const int nt = m.n_triangles();
  m.tri_edges.assign(nt, {-1, -1, -1});
  m.tri_edge_sign.assign(nt, {0, 0, 0});

  // Edge ids in first-encounter order over ascending triangles: deterministic.
  std::unordered_map<std::uint64_t, int> ids;
  ids.reserve(3 * nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tv = m.triangles[t];
    for (int i = 0; i < 3; ++i) {
      if (tv[i] < 0 || tv[i] >= m.n_vertices())
        throw std::invalid_argument("build_mesh: vertex id out of range");
    }
    const Triangle geo = m.triangle_geometry(t);
    if (!(geo.area > 0.0))
      throw std::invalid_argument("build_mesh: triangle " + std::to_string(t) +
                                  " is not counterclockwise (area <= 0)");
    for (int i = 0; i < 3; ++i) {
      const int a = tv[i], b = tv[(i + 1) % 3];
      auto [it, inserted] = ids.try_emplace(edge_key(a, b), m.n_edges());
      if (inserted) {
        Edge e;
        e.v = {std::min(a, b), std::max(a, b)};
        const EdgeGeometry geom =
            EdgeGeometry::from_endpoints(m.vertices[e.v[0]], m.vertices[e.v[1]]);
        e.normal = geom.normal;
        e.length = geom.length;
        m.edges.push_back(e);
      }
      const int eid = it->second;
      Edge& e = m.edges[eid];
      if (e.tris[0] < 0) {
        e.tris[0] = t;
      } else if (e.tris[1] < 0) {
        e.tris[1] = t;
      } else {
        throw std::invalid_argument("build_mesh: edge shared by more than 2 triangles");
      }
      m.tri_edges[t][i] = eid;
      // Outward normal of a CCW triangle along local edge i.
      const Vec2 dir = m.vertices[b] - m.vertices[a];
      const Vec2 outward = rotate_cw((1.0 / norm(dir)) * dir);
      const double s = dot(outward, e.normal);
      m.tri_edge_sign[t][i] = s > 0.0 ? 1 : -1;
    }
  }
  for (Edge& e : m.edges) e.on_boundary = (e.tris[1] < 0);
  return m;
}

Mesh build_unit_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("build_unit_square_mesh: n must be >= 1");
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Negative-slope diagonal from (i, j+1) to (i+1, j).
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      tris.push_back({v00, v10, v01});
      tris.push_back({v10, v11, v01});
    }
  }
  return build_mesh(std::move(vertices), std::move(tris));
}

Mesh build_lshape_initial() {
  // Domain (-1,1)^2 \ [0,1)x(-1,0]. All three squares use the
  // negative-slope diagonal, which makes the triangulation invariant under
  // the reflection (x,y) -> (-y,-x) about the reentrant corner.
  const std::vector<Vec2> vertices = {
      {-1.0, -1.0}, {0.0, -1.0},                          // 0 1
      {-1.0, 0.0},  {0.0, 0.0},  {1.0, 0.0},              // 2 3 4
      {-1.0, 1.0},  {0.0, 1.0},  {1.0, 1.0},              // 5 6 7
  };
  std::vector<std::array<int, 3>> tris;
  auto split_square = [&tris](int sw, int se, int ne, int nw) {
    tris.push_back({sw, se, nw});
    tris.push_back({se, ne, nw});
  };
  split_square(0, 1, 3, 2);  // bottom-left square
  split_square(2, 3, 6, 5);  // top-left square
  split_square(3, 4, 7, 6);  // top-right square
  return build_mesh(vertices, std::move(tris));
}

Mesh refine_uniform(const Mesh& m) {
  std::vector<Vec2> vertices = m.vertices;
  std::unordered_map<std::uint64_t, int> midpoint;
  midpoint.reserve(m.edges.size());
  auto mid = [&](int a, int b) {
    auto [it, inserted] = midpoint.try_emplace(edge_key(a, b), static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back(0.5 * (m.vertices[a] + m.vertices[b]));
    return it->second;
  };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(4 * m.triangles.size());
  for (const auto& tv : m.triangles) {
    const int m01 = mid(tv[0], tv[1]);
    const int m12 = mid(tv[1], tv[2]);
    const int m20 = mid(tv[2], tv[0]);
    tris.push_back({tv[0], m01, m20});
    tris.push_back({m01, tv[1], m12});
    tris.push_back({m20, m12, tv[2]});
    tris.push_back({m01, m12, m20});
  }
  return build_mesh(std::move(vertices), std::move(tris));
}

MeshReport validate(const Mesh& m) {
  MeshReport report;
  auto flag = [&report](const std::string& msg) { report.violations.push_back(msg); };

  for (int t = 0; t < m.n_triangles(); ++t) {
    const Triangle geo = m.triangle_geometry(t);
    if (!(geo.area > 0.0))
      flag("triangle " + std::to_string(t) + ": signed area " + std::to_string(geo.area) +
           " is not positive");
  }

  // Edge adjacency counts and boundary flags.
  for (int e = 0; e < m.n_edges(); ++e) {
    const Edge& ed = m.edges[e];
    const int adj = (ed.tris[0] >= 0 ? 1 : 0) + (ed.tris[1] >= 0 ? 1 : 0);
    if (adj < 1 || adj > 2)
      flag("edge " + std::to_string(e) + ": adjacent to " + std::to_string(adj) + " triangles");
    if (ed.on_boundary != (adj == 1))
      flag("edge " + std::to_string(e) + ": boundary flag inconsistent with adjacency");
    if (ed.v[0] >= ed.v[1]) flag("edge " + std::to_string(e) + ": vertex ids not ordered");
    if (std::abs(norm(ed.normal) - 1.0) > 1e-14)
      flag("edge " + std::to_string(e) + ": normal is not unit");
    const Vec2 tangent = m.vertices[ed.v[1]] - m.vertices[ed.v[0]];
    if (std::abs(dot(ed.normal, tangent)) > 1e-14 * norm(tangent))
      flag("edge " + std::to_string(e) + ": normal not perpendicular to edge");
  }

  // A duplicated/degenerate triangle shows up as an edge with 3 adjacent
  // triangles in build_mesh; rebuilt adjacency here catches meshes that
  // were edited after construction.
  std::map<std::pair<int, int>, int> count;
  for (const auto& tv : m.triangles)
    for (int i = 0; i < 3; ++i) {
      int a = tv[i], b = tv[(i + 1) % 3];
      if (a > b) std::swap(a, b);
      ++count[{a, b}];
    }
  for (const auto& [key, c] : count)
    if (c > 2)
      flag("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
           "): shared by " + std::to_string(c) + " triangles");

  // Sign consistency: sigma in {-1,+1}, outward normals of neighbours oppose.
  for (int t = 0; t < m.n_triangles(); ++t) {
    const auto& tv = m.triangles[t];
    for (int i = 0; i < 3; ++i) {
      const int eid = m.tri_edges[t][i];
      if (eid < 0 || eid >= m.n_edges()) {
        flag("triangle " + std::to_string(t) + ": missing edge id");
        continue;
      }
      const Vec2 dir = m.vertices[tv[(i + 1) % 3]] - m.vertices[tv[i]];
      const Vec2 outward = rotate_cw((1.0 / norm(dir)) * dir);
      const double s = dot(outward, m.edges[eid].normal);
      if (std::abs(std::abs(s) - 1.0) > 1e-12)
        flag("triangle " + std::to_string(t) + ", edge " + std::to_string(eid) +
             ": n_T . n_e = " + std::to_string(s) + " not +-1");
      if (m.tri_edge_sign[t][i] != (s > 0.0 ? 1 : -1))
        flag("triangle " + std::to_string(t) + ", edge " + std::to_string(eid) +
             ": stored sign disagrees with geometry");
    }
  }
  for (int e = 0; e < m.n_edges(); ++e) {
    const Edge& ed = m.edges[e];
    if (ed.on_boundary) continue;
    int sum = 0;
    for (int a = 0; a < 2; ++a) {
      const int t = ed.tris[a];
      for (int i = 0; i < 3; ++i)
        if (m.tri_edges[t][i] == e) sum += m.tri_edge_sign[t][i];
    }
    if (sum != 0)
      flag("interior edge " + std::to_string(e) + ": adjacent outward normals do not oppose");
  }

  // Euler formula for a simply connected triangulation: V - E + (F+1) = 2.
  const int euler = m.n_vertices() - m.n_edges() + m.n_triangles() + 1;
  if (euler != 2)
    flag("Euler characteristic V-E+F+1 = " + std::to_string(euler) + ", expected 2");

  return report;
}

void write_mesh(const Mesh& m, std::ostream& out) {
  out << "wgmesh 1\n";
  out << "V " << m.n_vertices() << "\n";
  char buf[80];
  for (const Vec2& v : m.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v.x, v.y);
    out << buf;
  }
  out << "T " << m.n_triangles() << "\n";
  for (const auto& t : m.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

void write_mesh(const Mesh& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_mesh: cannot open " + path);
  write_mesh(m, out);
}

Mesh read_mesh(std::istream& in) {
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "wgmesh" || version != 1)
    throw std::runtime_error("read_mesh: not a wgmesh version 1 file");
  std::string section;
  int nv = 0;
  in >> section >> nv;
  if (section != "V" || nv < 0) throw std::runtime_error("read_mesh: malformed vertex section");
  std::vector<Vec2> vertices(nv);
  for (Vec2& v : vertices) in >> v.x >> v.y;
  int nt = 0;
  in >> section >> nt;
  if (section != "T" || nt < 0) throw std::runtime_error("read_mesh: malformed triangle section");
  std::vector<std::array<int, 3>> tris(nt);
  for (auto& t : tris) in >> t[0] >> t[1] >> t[2];
  if (!in) throw std::runtime_error("read_mesh: truncated file");
  return build_mesh(std::move(vertices), std::move(tris));
}

Mesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_mesh: cannot open " + path);
  return read_mesh(in);
}

}  // namespace wg
