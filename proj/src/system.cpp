#include "wg/system.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace wg {

BoundaryData homogeneous_boundary() {
  return {[](Vec2) { return 0.0; }, [](Vec2, Vec2) { return 0.0; }};
}

Eigen::VectorXd dirichlet_edge_values(const Mesh& mesh, const DofMap& map,
                                      const BoundaryData& bc) {
  Eigen::VectorXd values = Eigen::VectorXd::Zero(map.n_edge_total());
  const int qd = data_quad_degree(map.k);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (!mesh.edges[e].on_boundary) continue;
    const EdgeGeometry geom = mesh.edge_geometry(e);
    const EdgeBasis basis(geom, map.k - 1);
    // The domain's outward normal on a boundary edge is the outward normal
    // of its only adjacent element: n_Omega = sigma n_e.
    const int t = mesh.edges[e].tris[0];
    int sigma = 0;
    for (int le = 0; le < 3; ++le)
      if (mesh.tri_edges[t][le] == e) sigma = mesh.tri_edge_sign[t][le];
    const Vec2 n_omega = static_cast<double>(sigma) * geom.normal;
    const long base = map.edge_space_offset(e);
    values.segment(base, map.k) = project_edge(basis, bc.g, qd);
    values.segment(base + map.k, map.k) =
        static_cast<double>(sigma) *
        project_edge(
            basis, [&](Vec2 p) { return bc.g_n(p, n_omega); }, qd);
  }
  return values;
}

namespace {

// Scatter one element's matrix/load into triplets over free DOFs, folding
// columns of fixed DOFs times their Dirichlet values into the rhs.
void scatter_element(const Eigen::MatrixXd& A, const Eigen::VectorXd& F,
                     const std::vector<long>& dofs, const std::vector<long>& free_index,
                     const Eigen::VectorXd& fixed_values,
                     std::vector<Eigen::Triplet<double>>& triplets, Eigen::VectorXd& rhs) {
  const int n = static_cast<int>(dofs.size());
  for (int i = 0; i < n; ++i) {
    const long gi = free_index[dofs[i]];
    if (gi < 0) continue;
    rhs[gi] += F[i];
    for (int j = 0; j < n; ++j) {
      const long gj = free_index[dofs[j]];
      if (gj >= 0)
        triplets.emplace_back(gi, gj, A(i, j));
      else
        rhs[gi] -= A(i, j) * fixed_values[dofs[j]];
    }
  }
}

}  // namespace

GlobalSystem assemble_full(const Mesh& mesh, int k, const ScalarField& f,
                           const BoundaryData& bc) {
  GlobalSystem sys;
  sys.map = DofMap::build(mesh, k);
  const Eigen::VectorXd edge_values = dirichlet_edge_values(mesh, sys.map, bc);
  sys.dirichlet = Eigen::VectorXd::Zero(sys.map.full_size());
  sys.dirichlet.tail(sys.map.n_edge_total()) = edge_values;
  sys.rhs = Eigen::VectorXd::Zero(sys.map.n_full_free);

  std::vector<Eigen::Triplet<double>> triplets;
  const ElementDofLayout lay(k);
  triplets.reserve(static_cast<std::size_t>(mesh.n_triangles()) * lay.n_local() * lay.n_local());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementContext ctx = make_element_context(mesh, t, k);
    Eigen::MatrixXd A;
    try {
      A = local_operators(ctx).A;
    } catch (const std::runtime_error& err) {
      throw NumericalError("assemble_full: element " + std::to_string(t) + ": " + err.what());
    }
    const Eigen::VectorXd F = local_load(ctx, f);
    scatter_element(A, F, sys.map.element_dofs(mesh, t), sys.map.full_free, sys.dirichlet,
                    triplets, sys.rhs);
  }
  sys.A.resize(sys.map.n_full_free, sys.map.n_full_free);
  sys.A.setFromTriplets(triplets.begin(), triplets.end());
  sys.A.makeCompressed();
  return sys;
}

CondensedSystem condense(const Mesh& mesh, int k, const ScalarField& f, const BoundaryData& bc) {
  CondensedSystem sys;
  sys.map = DofMap::build(mesh, k);
  sys.dirichlet = dirichlet_edge_values(mesh, sys.map, bc);
  sys.rhs = Eigen::VectorXd::Zero(sys.map.n_edge_free);
  sys.elements.resize(mesh.n_triangles());

  const ElementDofLayout lay(k);
  const int n0 = lay.n_interior;
  const int ne = lay.n_local() - n0;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.n_triangles()) * ne * ne);

  // Local DOF ids in the edge-only space, and -1 markers for interiors.
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementContext ctx = make_element_context(mesh, t, k);
    Eigen::MatrixXd A;
    try {
      A = local_operators(ctx).A;
    } catch (const std::runtime_error& err) {
      throw NumericalError("condense: element " + std::to_string(t) + ": " + err.what());
    }
    const Eigen::VectorXd F = local_load(ctx, f);

    CondensedSystem::ElementData& el = sys.elements[t];
    el.A0e = A.topRightCorner(n0, ne);
    el.F0 = F.head(n0);
    el.A00.compute(A.topLeftCorner(n0, n0));
    if (el.A00.info() != Eigen::Success)
      throw NotSpdError("condense: interior block of element " + std::to_string(t) +
                        " is not SPD");

    const Eigen::MatrixXd A00inv_A0e = el.A00.solve(el.A0e);
    Eigen::MatrixXd schur = A.bottomRightCorner(ne, ne) - el.A0e.transpose() * A00inv_A0e;
    schur = 0.5 * (schur + schur.transpose());
    const Eigen::VectorXd load = -el.A0e.transpose() * el.A00.solve(el.F0);

    std::vector<long> dofs(ne);
    for (int le = 0; le < 3; ++le) {
      const long base = sys.map.edge_space_offset(mesh.tri_edges[t][le]);
      for (int c = 0; c < 2 * k; ++c) dofs[le * 2 * k + c] = base + c;
    }
    scatter_element(schur, load, dofs, sys.map.edge_free, sys.dirichlet, triplets, sys.rhs);
  }
  sys.A.resize(sys.map.n_edge_free, sys.map.n_edge_free);
  sys.A.setFromTriplets(triplets.begin(), triplets.end());
  sys.A.makeCompressed();
  return sys;
}

namespace {

std::pair<Eigen::VectorXd, SolveReport> solve_cg(const Eigen::SparseMatrix<double>& A,
                                                 const Eigen::VectorXd& rhs, double tol) {
  const long n = A.rows();
  SolveReport report;
  report.method = "cg-jacobi";
  report.n = n;
  report.nnz = A.nonZeros();

  const double bnorm = rhs.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (bnorm == 0.0) return {x, report};

  Eigen::VectorXd diag = A.diagonal();
  for (long i = 0; i < n; ++i)
    if (diag[i] <= 0.0) throw NotSpdError("cg: nonpositive diagonal entry");

  const long max_iterations = static_cast<long>(std::ceil(50.0 * std::sqrt(double(n))));
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z = r.cwiseQuotient(diag);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  for (long it = 1; it <= max_iterations; ++it) {
    const Eigen::VectorXd Ap = A * p;
    const double pAp = p.dot(Ap);
    if (pAp <= 0.0) throw NotSpdError("cg: matrix not positive definite");
    const double alpha = rz / pAp;
    x += alpha * p;
    r -= alpha * Ap;
    report.iterations = it;
    report.residual = r.norm() / bnorm;
    if (report.residual <= tol) return {x, report};
    z = r.cwiseQuotient(diag);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  throw SolverConvergenceError("cg: no convergence in " + std::to_string(max_iterations) +
                               " iterations (residual " + std::to_string(report.residual) + ")");
}

}  // namespace

std::pair<Eigen::VectorXd, SolveReport> solve(const Eigen::SparseMatrix<double>& A,
                                              const Eigen::VectorXd& rhs,
                                              const SolverOptions& options) {
  if (options.method == SolverMethod::ConjugateGradient)
    return solve_cg(A, rhs, options.tolerance);

  SolveReport report;
  report.method = "cholesky";
  report.n = A.rows();
  report.nnz = A.nonZeros();
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(A);
  if (llt.info() != Eigen::Success)
    throw NotSpdError("cholesky: factorization failed (matrix not SPD)");
  Eigen::VectorXd x = llt.solve(rhs);
  const double bnorm = rhs.norm();
  report.residual = bnorm > 0.0 ? (A * x - rhs).norm() / bnorm : (A * x - rhs).norm();
  return {x, report};
}

WGFunction solve_full(const GlobalSystem& system, const SolverOptions& options,
                      SolveReport* report) {
  auto [x, rep] = solve(system.A, system.rhs, options);
  if (report) *report = rep;
  WGFunction u = WGFunction::zero(system.map);
  u.data = system.dirichlet;
  for (long g = 0; g < system.map.full_size(); ++g)
    if (system.map.full_free[g] >= 0) u.data[g] = x[system.map.full_free[g]];
  return u;
}

WGFunction recover_interior(const Mesh& mesh, const CondensedSystem& system,
                            const Eigen::VectorXd& edge_values) {
  const DofMap& map = system.map;
  WGFunction u = WGFunction::zero(map);
  u.data.tail(map.n_edge_total()) = edge_values;
  const ElementDofLayout lay(map.k);
  const int ne = lay.n_local() - lay.n_interior;
  Eigen::VectorXd we(ne);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    for (int le = 0; le < 3; ++le)
      we.segment(le * 2 * map.k, 2 * map.k) =
          edge_values.segment(map.edge_space_offset(mesh.tri_edges[t][le]), 2 * map.k);
    const CondensedSystem::ElementData& el = system.elements[t];
    u.interior(t) = el.A00.solve(el.F0 - el.A0e * we);
  }
  return u;
}

WGFunction solve_condensed(const Mesh& mesh, const CondensedSystem& system,
                           const SolverOptions& options, SolveReport* report) {
  auto [x, rep] = solve(system.A, system.rhs, options);
  if (report) *report = rep;
  Eigen::VectorXd edge_values = system.dirichlet;
  for (long g = 0; g < system.map.n_edge_total(); ++g)
    if (system.map.edge_free[g] >= 0) edge_values[g] = x[system.map.edge_free[g]];
  return recover_interior(mesh, system, edge_values);
}

double check_equivalence(const Mesh& mesh, int k, const ScalarField& f, const BoundaryData& bc,
                         const SolverOptions& options) {
  const GlobalSystem full = assemble_full(mesh, k, f, bc);
  const WGFunction u = solve_full(full, options);
  const CondensedSystem reduced = condense(mesh, k, f, bc);
  const WGFunction w = solve_condensed(mesh, reduced, options);
  return max_dof_difference(u, w);
}

double galerkin_residual(const GlobalSystem& system, const Eigen::VectorXd& free_solution) {
  return (system.A * free_solution - system.rhs).cwiseAbs().maxCoeff();
}

void write_matrix_market(const Eigen::SparseMatrix<double>& A, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  long nnz_lower = 0;
  for (int col = 0; col < A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it)
      if (it.row() >= it.col()) ++nnz_lower;
  out << A.rows() << " " << A.cols() << " " << nnz_lower << "\n";
  char buf[64];
  for (int col = 0; col < A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it) {
      if (it.row() < it.col()) continue;
      std::snprintf(buf, sizeof(buf), "%ld %ld %.17g\n", static_cast<long>(it.row()) + 1,
                    static_cast<long>(it.col()) + 1, it.value());
      out << buf;
    }
}

void write_matrix_market(const Eigen::SparseMatrix<double>& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
  write_matrix_market(A, out);
}

void write_solution(const WGFunction& u, std::ostream& out) {
  out << "wgsolution 1\n";
  out << "k " << u.k << "\n";
  char buf[32];
  auto emit = [&](const auto& segment) {
    for (long i = 0; i < segment.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", segment[i]);
      out << buf << (i + 1 < segment.size() ? " " : "\n");
    }
  };
  out << "interior " << u.n_elements << " " << u.n0 << "\n";
  for (int t = 0; t < u.n_elements; ++t) emit(u.interior(t));
  out << "edges " << u.n_edges << " " << u.edge_block << "\n";
  for (int e = 0; e < u.n_edges; ++e)
    emit(u.data.segment(u.edge_offset(e), u.edge_block));
}

void write_solution(const WGFunction& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_solution: cannot open " + path);
  write_solution(u, out);
}

}  // namespace wg
