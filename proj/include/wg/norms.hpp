// The two error norms of the convergence studies.
//
// Discrete H2 norm:
//   |||v|||^2 = sum_T ( int_T |D_w v|^2
//                     + h_T^{-1} int_bT |(grad v_0 - v_n n_e) . n|^2
//                     + h_T^{-3} int_bT (Q_b v_0 - v_b)^2 )
// with D_w the discrete weak Laplacian; it coincides with a(v, v). The
// implementation evaluates the integrands pointwise at quadrature nodes,
// independently of the matrix route used by assembly.
//
// Element-based L2 norm: ||v||^2 = sum_T int_T |v_0|^2.

#pragma once

#include "wg/dofmap.hpp"
#include "wg/mesh.hpp"
#include "wg/problems.hpp"

namespace wg {

double triple_bar_norm(const WGFunction& v, const Mesh& mesh);
double l2_norm_interior(const WGFunction& v, const Mesh& mesh);

/// |||u_h - Q_h u||| for an exact solution u.
double triple_bar_error(const WGFunction& u_h, const ManufacturedSolution& exact,
                        const Mesh& mesh);

/// ||u_0 - Q_0 u|| for an exact solution u.
double l2_error(const WGFunction& u_h, const ManufacturedSolution& exact, const Mesh& mesh);

}  // namespace wg
