// Global WG system, its statically condensed (Schur complement) form, and
// the sparse SPD solvers.
//
// The full system couples interior and edge unknowns; boundary-edge traces
// are fixed to {Q_b g, sigma Q_b g_n} and eliminated symmetrically into the
// right-hand side. Condensation factorizes each element's interior block
// A_00 once and assembles the reduced edge system
//   (A_ee - A_e0 A_00^{-1} A_0e) w_e = -A_e0 A_00^{-1} F_0 ,
// whose solution together with the per-element recovery
//   w_0 = A_00^{-1}(F_0 - A_0e w_e)
// reproduces the full solution exactly.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wg/dofmap.hpp"
#include "wg/element.hpp"
#include "wg/mesh.hpp"

namespace wg {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Cholesky breakdown: the matrix is not numerically SPD.
struct NotSpdError : NumericalError {
  using NumericalError::NumericalError;
};
/// Iterative solver failed to reach the requested tolerance.
struct SolverConvergenceError : NumericalError {
  using NumericalError::NumericalError;
};

/// Clamped boundary data: u = g and grad(u).n = g_n on the boundary; g_n
/// is evaluated against the outward unit normal of the domain.
struct BoundaryData {
  ScalarField g;
  std::function<double(Vec2, Vec2)> g_n;  // (point, outward normal)
};

BoundaryData homogeneous_boundary();

struct GlobalSystem {
  DofMap map;
  Eigen::SparseMatrix<double> A;  // over free DOFs
  Eigen::VectorXd rhs;
  Eigen::VectorXd dirichlet;      // full-space vector, nonzero on fixed DOFs
};

struct CondensedSystem {
  DofMap map;
  Eigen::SparseMatrix<double> A;  // over free edge DOFs
  Eigen::VectorXd rhs;
  Eigen::VectorXd dirichlet;      // edge-space vector, nonzero on fixed DOFs

  struct ElementData {
    Eigen::LLT<Eigen::MatrixXd> A00;  // factorized interior block
    Eigen::MatrixXd A0e;
    Eigen::VectorXd F0;
  };
  std::vector<ElementData> elements;
};

/// Trace values {Q_b g, sigma Q_b g_n} on boundary edges, in the edge-only
/// id space (zero on interior edges).
Eigen::VectorXd dirichlet_edge_values(const Mesh& mesh, const DofMap& map,
                                      const BoundaryData& bc);

GlobalSystem assemble_full(const Mesh& mesh, int k, const ScalarField& f,
                           const BoundaryData& bc);

CondensedSystem condense(const Mesh& mesh, int k, const ScalarField& f, const BoundaryData& bc);

enum class SolverMethod { Direct, ConjugateGradient };

struct SolverOptions {
  SolverMethod method = SolverMethod::Direct;
  double tolerance = 1e-10;  // relative residual, iterative path only
};

struct SolveReport {
  std::string method;
  long n = 0;
  long nnz = 0;
  long iterations = 0;  // 0 for the direct path
  double residual = 0.0;
};

/// Solve a sparse SPD system. Direct path: sparse Cholesky with
/// fill-reducing ordering; iterative path: diagonally preconditioned
/// conjugate gradients capped at 50*sqrt(n) iterations.
std::pair<Eigen::VectorXd, SolveReport> solve(const Eigen::SparseMatrix<double>& A,
                                              const Eigen::VectorXd& rhs,
                                              const SolverOptions& options = {});

/// Solve the full system and scatter into a complete WG function.
WGFunction solve_full(const GlobalSystem& system, const SolverOptions& options = {},
                      SolveReport* report = nullptr);

/// Per-element interior recovery from an edge solution (edge-only id
/// space, fixed DOFs already holding their boundary values).
WGFunction recover_interior(const Mesh& mesh, const CondensedSystem& system,
                            const Eigen::VectorXd& edge_values);

/// Solve the condensed system and recover interiors.
WGFunction solve_condensed(const Mesh& mesh, const CondensedSystem& system,
                           const SolverOptions& options = {}, SolveReport* report = nullptr);

/// Max-abs DOF difference between the solutions of the full WG system and
/// its condensed form.
double check_equivalence(const Mesh& mesh, int k, const ScalarField& f, const BoundaryData& bc,
                         const SolverOptions& options = {});

/// Residual max |a(u_h, basis_i) - (f, basis_i)| over all free test DOFs.
double galerkin_residual(const GlobalSystem& system, const Eigen::VectorXd& free_solution);

void write_matrix_market(const Eigen::SparseMatrix<double>& A, std::ostream& out);
void write_matrix_market(const Eigen::SparseMatrix<double>& A, const std::string& path);

void write_solution(const WGFunction& u, std::ostream& out);
void write_solution(const WGFunction& u, const std::string& path);

}  // namespace wg
