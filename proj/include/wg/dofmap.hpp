// Global DOF numbering for the WG space and coefficient storage for weak
// functions.
//
// Global id space: all interior blocks first (element-major), then one
// block of 2k trace coefficients per edge (v_b then v_n). The free-DOF
// numbering removes the v_b, v_n blocks of boundary edges, which realize
// the vanishing-trace subspace once their values are fixed to boundary
// data.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wg/element.hpp"
#include "wg/mesh.hpp"

namespace wg {

struct DofMap {
  int k = 0;
  int n0 = 0;          // interior DOFs per element
  int edge_block = 0;  // 2k trace DOFs per edge
  int n_elements = 0;
  int n_edges = 0;
  std::vector<char> boundary_edge;

  // full id space -> free index, -1 on Dirichlet-fixed DOFs
  std::vector<long> full_free;
  // edge-only id space -> free index, for the condensed system
  std::vector<long> edge_free;
  long n_full_free = 0;
  long n_edge_free = 0;
  long n_edge_fixed = 0;

  static DofMap build(const Mesh& mesh, int k);

  long n_interior() const { return static_cast<long>(n_elements) * n0; }
  long n_edge_total() const { return static_cast<long>(n_edges) * edge_block; }
  long full_size() const { return n_interior() + n_edge_total(); }

  long interior_offset(int t) const { return static_cast<long>(t) * n0; }
  long edge_offset(int e) const { return n_interior() + static_cast<long>(e) * edge_block; }
  long edge_space_offset(int e) const { return static_cast<long>(e) * edge_block; }

  /// Full-space ids of the local DOFs of element t, in layout order.
  std::vector<long> element_dofs(const Mesh& mesh, int t) const;
};

/// Coefficients of a weak function {v_0, v_b, v_n} over a whole mesh,
/// stored in the full id space of a DofMap. v_n is relative to the fixed
/// edge normal n_e.
struct WGFunction {
  int k = 0;
  int n0 = 0;
  int edge_block = 0;
  int n_elements = 0;
  int n_edges = 0;
  Eigen::VectorXd data;

  static WGFunction zero(const DofMap& map);

  Eigen::VectorBlock<Eigen::VectorXd> interior(int t) {
    return data.segment(static_cast<long>(t) * n0, n0);
  }
  Eigen::VectorBlock<const Eigen::VectorXd> interior(int t) const {
    return data.segment(static_cast<long>(t) * n0, n0);
  }
  long edge_offset(int e) const {
    return static_cast<long>(n_elements) * n0 + static_cast<long>(e) * edge_block;
  }
  Eigen::VectorBlock<Eigen::VectorXd> vb(int e) { return data.segment(edge_offset(e), k); }
  Eigen::VectorBlock<const Eigen::VectorXd> vb(int e) const {
    return data.segment(edge_offset(e), k);
  }
  Eigen::VectorBlock<Eigen::VectorXd> vn(int e) { return data.segment(edge_offset(e) + k, k); }
  Eigen::VectorBlock<const Eigen::VectorXd> vn(int e) const {
    return data.segment(edge_offset(e) + k, k);
  }

  /// Local DOF vector of element t in ElementDofLayout order.
  Eigen::VectorXd local_vector(const Mesh& mesh, int t) const;
};

/// Largest absolute DOF difference between two functions on the same mesh.
double max_dof_difference(const WGFunction& a, const WGFunction& b);

/// Projection Q_h of a smooth function into the WG space:
/// {Q_0 u, Q_b u, Q_b(grad u . n_e)} on every element and edge.
WGFunction project_Qh(const Mesh& mesh, int k, const ScalarField& u, const VectorField& grad_u);

}  // namespace wg
