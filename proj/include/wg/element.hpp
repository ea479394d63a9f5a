// Per-element weak Galerkin machinery.
//
// A weak function on a triangle is the triple {v_0, v_b, v_n}: an interior
// polynomial v_0 in P_k(T) and, on each edge, trace polynomials v_b, v_n in
// P_{k-1}(e). The normal-trace unknown v_n approximates grad(v).n_e with
// respect to the fixed edge normal, so inside element integrals it is
// multiplied by sigma = n_T . n_e. The discrete weak Laplacian of v is the
// polynomial in P_{k-2}(T) whose moments against every test polynomial psi
// equal
//   (v_0, lap psi)_T - <v_b, grad psi . n>_bT + <sigma v_n, psi>_bT .

#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>

#include "wg/basis.hpp"
#include "wg/mesh.hpp"

namespace wg {

/// Quadrature degree for all bilinear-form integrals (exact for the
/// polynomial integrands of order-k elements).
inline int form_quad_degree(int k) { return 2 * k; }

/// Quadrature degree for data integrals: loads, boundary projections,
/// error norms. Higher than the form degree so consistency error stays
/// below discretization error.
inline int data_quad_degree(int k) { return 2 * k + 4; }

/// Local DOF ordering on a triangle of order k >= 2:
///   [ interior P_k | edge0: v_b, v_n | edge1: v_b, v_n | edge2: v_b, v_n ]
/// with k coefficients per edge trace, so n_local = (k+1)(k+2)/2 + 6k.
struct ElementDofLayout {
  int k = 0;
  int n_interior = 0;  // dim P_k(T)
  int per_trace = 0;   // dim P_{k-1}(e) = k

  explicit ElementDofLayout(int order)
      : k(order), n_interior((order + 1) * (order + 2) / 2), per_trace(order) {
    if (order < 2) throw std::invalid_argument("ElementDofLayout: order must be >= 2");
  }
  int n_local() const { return n_interior + 6 * per_trace; }
  int vb_offset(int local_edge) const { return n_interior + local_edge * 2 * per_trace; }
  int vn_offset(int local_edge) const { return vb_offset(local_edge) + per_trace; }
};

/// Bundled geometry and bases for one element.
struct ElementContext {
  Triangle tri;
  ElementDofLayout layout;
  std::array<EdgeGeometry, 3> edge;
  std::array<int, 3> sigma{};  // n_T . n_e per local edge
  TriBasis basis_k;            // interior basis P_k
  TriBasis basis_km2;          // weak-Laplacian space P_{k-2}
  std::array<EdgeBasis, 3> edge_basis;
};

ElementContext make_element_context(const Mesh& mesh, int t, int k);

/// Standalone variant for property tests: edge normals follow the global
/// convention applied to the triangle's own vertices, optionally flipped
/// per edge to exercise both signs of sigma.
ElementContext make_element_context(const Triangle& tri, int k,
                                    const std::array<bool, 3>& flip_normal = {false, false,
                                                                              false});

/// Weak-Laplacian moment matrix L: for a local DOF vector v, row j of L v
/// is the psi_j-moment of the discrete weak Laplacian of v.
Eigen::MatrixXd weak_laplacian_matrix(const ElementContext& ctx);

/// Stabilizer matrix:
///   h_T^{-1} <grad u_0 . n_e - u_n, grad v_0 . n_e - v_n>_bT
/// + h_T^{-3} <Q_b u_0 - u_b,       Q_b v_0 - v_b>_bT .
/// Symmetric positive semidefinite; vanishes exactly on DOF vectors whose
/// traces match their interior polynomial.
Eigen::MatrixXd stabilizer_matrix(const ElementContext& ctx);

/// Local operators of the bilinear form a(.,.) on one element.
struct LocalOperators {
  Eigen::MatrixXd L;                        // weak-Laplacian moments
  Eigen::MatrixXd mass_km2;                 // P_{k-2} mass matrix
  Eigen::LLT<Eigen::MatrixXd> mass_km2_llt;
  Eigen::MatrixXd S;                        // stabilizer
  Eigen::MatrixXd A;                        // L^T M^{-1} L + S

  /// P_{k-2} coefficients of the discrete weak Laplacian of v.
  Eigen::VectorXd weak_laplacian_coeffs(const Eigen::VectorXd& v) const {
    return mass_km2_llt.solve(L * v);
  }
};

LocalOperators local_operators(const ElementContext& ctx);

/// Load vector: (f, phi_i)_T on interior DOFs, zero on edge DOFs.
Eigen::VectorXd local_load(const ElementContext& ctx, const ScalarField& f);

/// Q_h projection of a smooth function on this element:
/// interior DOFs Q_0 u, per edge v_b = Q_b u and v_n = Q_b(grad u . n_e).
Eigen::VectorXd project_Qh_local(const ElementContext& ctx, const ScalarField& u,
                                 const VectorField& grad_u);

}  // namespace wg
