#include "wg/element.hpp"

#include <cmath>
#include <stdexcept>

#include "wg/quadrature.hpp"

namespace wg {

namespace {

int sign_of(const Vec2& outward, const Vec2& edge_normal) {
  const double s = dot(outward, edge_normal);
  if (std::abs(std::abs(s) - 1.0) > 1e-12)
    throw std::runtime_error("element: edge normal not aligned with element outward normal");
  return s > 0.0 ? 1 : -1;
}

ElementContext build_context(const Triangle& tri, int k, std::array<EdgeGeometry, 3> edges) {
  std::array<int, 3> sigma{};
  for (int i = 0; i < 3; ++i) {
    const Vec2 dir = tri.v[(i + 1) % 3] - tri.v[i];
    const Vec2 outward = rotate_cw((1.0 / norm(dir)) * dir);
    sigma[i] = sign_of(outward, edges[i].normal);
  }
  return ElementContext{tri,
                        ElementDofLayout(k),
                        edges,
                        sigma,
                        TriBasis(tri, k),
                        TriBasis(tri, k - 2),
                        {EdgeBasis(edges[0], k - 1), EdgeBasis(edges[1], k - 1),
                         EdgeBasis(edges[2], k - 1)}};
}

}  // namespace

ElementContext make_element_context(const Mesh& mesh, int t, int k) {
  const Triangle tri = mesh.triangle_geometry(t);
  std::array<EdgeGeometry, 3> edges = {mesh.edge_geometry(mesh.tri_edges[t][0]),
                                       mesh.edge_geometry(mesh.tri_edges[t][1]),
                                       mesh.edge_geometry(mesh.tri_edges[t][2])};
  ElementContext ctx = build_context(tri, k, edges);
  for (int i = 0; i < 3; ++i) {
    if (ctx.sigma[i] != mesh.tri_edge_sign[t][i])
      throw std::runtime_error("element: stored edge sign disagrees with geometry");
  }
  return ctx;
}

ElementContext make_element_context(const Triangle& tri, int k,
                                    const std::array<bool, 3>& flip_normal) {
  std::array<EdgeGeometry, 3> edges;
  for (int i = 0; i < 3; ++i) {
    // Emulate the mesh convention (endpoints ordered by vertex id) with a
    // lexicographic order on coordinates.
    Vec2 a = tri.v[i], b = tri.v[(i + 1) % 3];
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
    if (flip_normal[i]) std::swap(a, b);
    edges[i] = EdgeGeometry::from_endpoints(a, b);
  }
  return build_context(tri, k, edges);
}

Eigen::MatrixXd weak_laplacian_matrix(const ElementContext& ctx) {
  const ElementDofLayout& lay = ctx.layout;
  const int ntest = ctx.basis_km2.size();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(ntest, lay.n_local());
  const int qd = form_quad_degree(lay.k);

  // Interior columns: (phi_i, lap psi_j)_T.
  {
    const QuadratureRule q = tri_quadrature(ctx.tri, qd);
    const BasisValues trial = ctx.basis_k.eval(q.points);
    const BasisValues test = ctx.basis_km2.eval(q.points);
    for (std::size_t p = 0; p < q.points.size(); ++p)
      L.leftCols(lay.n_interior) +=
          q.weights[p] * test.lap.row(p).transpose() * trial.val.row(p);
  }

  // Edge columns: -<v_b, grad psi . n>_e and <sigma v_n, psi>_e.
  for (int le = 0; le < 3; ++le) {
    const EdgeQuadrature q = edge_quadrature(ctx.edge[le], qd);
    const BasisValues test = ctx.basis_km2.eval(q.points);
    const Eigen::MatrixXd tr = ctx.edge_basis[le].eval_param(q.s);
    const Vec2 n_e = ctx.edge[le].normal;
    const double sig = ctx.sigma[le];
    const Vec2 n_out = sig * n_e;
    for (std::size_t p = 0; p < q.points.size(); ++p) {
      const Eigen::RowVectorXd dn =
          n_out.x * test.dx.row(p) + n_out.y * test.dy.row(p);
      L.block(0, lay.vb_offset(le), ntest, lay.per_trace) -=
          q.weights[p] * dn.transpose() * tr.row(p);
      L.block(0, lay.vn_offset(le), ntest, lay.per_trace) +=
          q.weights[p] * sig * test.val.row(p).transpose() * tr.row(p);
    }
  }
  return L;
}

Eigen::MatrixXd stabilizer_matrix(const ElementContext& ctx) {
  const ElementDofLayout& lay = ctx.layout;
  const int n = lay.n_local();
  const double h = ctx.tri.diameter;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  const int qd = form_quad_degree(lay.k);

  for (int le = 0; le < 3; ++le) {
    const EdgeBasis& eb = ctx.edge_basis[le];
    const EdgeQuadrature q = edge_quadrature(ctx.edge[le], qd);
    const BasisValues phi = ctx.basis_k.eval(q.points);
    const Eigen::MatrixXd tr = eb.eval_param(q.s);
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(q.weights.data(), q.weights.size());
    const Eigen::VectorXd inv_mass = eb.mass_diagonal().cwiseInverse();
    const Vec2 n_e = ctx.edge[le].normal;

    // Legendre coefficients of the traces of the interior basis:
    // Pb = Q_b(phi_i|_e), Pn = Q_b(grad phi_i . n_e); the latter equals the
    // trace itself since grad phi . n_e already lies in P_{k-1}(e).
    const Eigen::MatrixXd dn = n_e.x * phi.dx + n_e.y * phi.dy;
    const Eigen::MatrixXd Pb =
        inv_mass.asDiagonal() * tr.transpose() * w.asDiagonal() * phi.val;
    const Eigen::MatrixXd Pn = inv_mass.asDiagonal() * tr.transpose() * w.asDiagonal() * dn;

    // Residual operators (Legendre coefficients of the stabilized jumps).
    Eigen::MatrixXd Rb = Eigen::MatrixXd::Zero(lay.per_trace, n);
    Eigen::MatrixXd Rn = Eigen::MatrixXd::Zero(lay.per_trace, n);
    Rb.leftCols(lay.n_interior) = Pb;
    Rn.leftCols(lay.n_interior) = Pn;
    Rb.block(0, lay.vb_offset(le), lay.per_trace, lay.per_trace) =
        -Eigen::MatrixXd::Identity(lay.per_trace, lay.per_trace);
    Rn.block(0, lay.vn_offset(le), lay.per_trace, lay.per_trace) =
        -Eigen::MatrixXd::Identity(lay.per_trace, lay.per_trace);

    const Eigen::VectorXd mass = eb.mass_diagonal();
    S += (1.0 / h) * Rn.transpose() * mass.asDiagonal() * Rn;
    S += (1.0 / (h * h * h)) * Rb.transpose() * mass.asDiagonal() * Rb;
  }
  return 0.5 * (S + S.transpose());
}

LocalOperators local_operators(const ElementContext& ctx) {
  LocalOperators ops;
  ops.L = weak_laplacian_matrix(ctx);
  ops.mass_km2 = ctx.basis_km2.mass_matrix();
  ops.mass_km2_llt.compute(ops.mass_km2);
  if (ops.mass_km2_llt.info() != Eigen::Success || ops.mass_km2_llt.rcond() < 1e-12)
    throw std::runtime_error("element: P_{k-2} mass matrix numerically singular");
  ops.S = stabilizer_matrix(ctx);
  const Eigen::MatrixXd MinvL = ops.mass_km2_llt.solve(ops.L);
  Eigen::MatrixXd A = ops.L.transpose() * MinvL + ops.S;
  ops.A = 0.5 * (A + A.transpose());
  return ops;
}

Eigen::VectorXd local_load(const ElementContext& ctx, const ScalarField& f) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(ctx.layout.n_local());
  F.head(ctx.layout.n_interior) = ctx.basis_k.moments(f, data_quad_degree(ctx.layout.k));
  return F;
}

Eigen::VectorXd project_Qh_local(const ElementContext& ctx, const ScalarField& u,
                                 const VectorField& grad_u) {
  const ElementDofLayout& lay = ctx.layout;
  const int qd = data_quad_degree(lay.k);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(lay.n_local());
  v.head(lay.n_interior) = project_tri(ctx.basis_k, u, qd);
  for (int le = 0; le < 3; ++le) {
    const Vec2 n_e = ctx.edge[le].normal;
    v.segment(lay.vb_offset(le), lay.per_trace) = project_edge(ctx.edge_basis[le], u, qd);
    v.segment(lay.vn_offset(le), lay.per_trace) = project_edge(
        ctx.edge_basis[le], [&](Vec2 p) { return dot(grad_u(p), n_e); }, qd);
  }
  return v;
}

}  // namespace wg
