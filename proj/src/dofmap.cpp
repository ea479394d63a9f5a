#include "wg/dofmap.hpp"

#include <stdexcept>

namespace wg {

DofMap DofMap::build(const Mesh& mesh, int k) {
  if (k < 2) throw std::invalid_argument("DofMap: order must be >= 2");
  DofMap map;
  map.k = k;
  map.n0 = (k + 1) * (k + 2) / 2;
  map.edge_block = 2 * k;
  map.n_elements = mesh.n_triangles();
  map.n_edges = mesh.n_edges();
  map.boundary_edge.resize(mesh.n_edges());
  for (int e = 0; e < mesh.n_edges(); ++e) map.boundary_edge[e] = mesh.edges[e].on_boundary;

  map.full_free.assign(map.full_size(), -1);
  map.edge_free.assign(map.n_edge_total(), -1);
  long idx = 0;
  for (long i = 0; i < map.n_interior(); ++i) map.full_free[i] = idx++;
  long edge_idx = 0;
  for (int e = 0; e < map.n_edges(); ++e) {
    if (map.boundary_edge[e]) continue;
    for (int c = 0; c < map.edge_block; ++c) {
      map.full_free[map.edge_offset(e) + c] = idx++;
      map.edge_free[map.edge_space_offset(e) + c] = edge_idx++;
    }
  }
  map.n_full_free = idx;
  map.n_edge_free = edge_idx;
  map.n_edge_fixed = map.n_edge_total() - edge_idx;
  return map;
}

std::vector<long> DofMap::element_dofs(const Mesh& mesh, int t) const {
  const ElementDofLayout lay(k);
  std::vector<long> dofs(lay.n_local());
  for (int i = 0; i < n0; ++i) dofs[i] = interior_offset(t) + i;
  for (int le = 0; le < 3; ++le) {
    const long base = edge_offset(mesh.tri_edges[t][le]);
    for (int c = 0; c < k; ++c) {
      dofs[lay.vb_offset(le) + c] = base + c;
      dofs[lay.vn_offset(le) + c] = base + k + c;
    }
  }
  return dofs;
}

WGFunction WGFunction::zero(const DofMap& map) {
  WGFunction f;
  f.k = map.k;
  f.n0 = map.n0;
  f.edge_block = map.edge_block;
  f.n_elements = map.n_elements;
  f.n_edges = map.n_edges;
  f.data = Eigen::VectorXd::Zero(map.full_size());
  return f;
}

Eigen::VectorXd WGFunction::local_vector(const Mesh& mesh, int t) const {
  const ElementDofLayout lay(k);
  Eigen::VectorXd v(lay.n_local());
  v.head(n0) = interior(t);
  for (int le = 0; le < 3; ++le) {
    const int e = mesh.tri_edges[t][le];
    v.segment(lay.vb_offset(le), k) = vb(e);
    v.segment(lay.vn_offset(le), k) = vn(e);
  }
  return v;
}

double max_dof_difference(const WGFunction& a, const WGFunction& b) {
  if (a.data.size() != b.data.size())
    throw std::invalid_argument("max_dof_difference: size mismatch");
  return (a.data - b.data).cwiseAbs().maxCoeff();
}

WGFunction project_Qh(const Mesh& mesh, int k, const ScalarField& u, const VectorField& grad_u) {
  const DofMap map = DofMap::build(mesh, k);
  WGFunction out = WGFunction::zero(map);
  const int qd = data_quad_degree(k);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const TriBasis basis(mesh.triangle_geometry(t), k);
    out.interior(t) = project_tri(basis, u, qd);
  }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const EdgeGeometry geom = mesh.edge_geometry(e);
    const EdgeBasis basis(geom, k - 1);
    out.vb(e) = project_edge(basis, u, qd);
    out.vn(e) = project_edge(
        basis, [&](Vec2 p) { return dot(grad_u(p), geom.normal); }, qd);
  }
  return out;
}

}  // namespace wg
