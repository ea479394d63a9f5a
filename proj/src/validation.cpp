#include "wg/validation.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "wg/convergence.hpp"
#include "wg/norms.hpp"
#include "wg/quadrature.hpp"
#include "wg/system.hpp"

namespace wg {

namespace {

using Rng = std::mt19937;

Triangle random_triangle(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-1.0, 1.0);
  while (true) {
    Vec2 a{unit(rng), unit(rng)}, b{unit(rng), unit(rng)}, c{unit(rng), unit(rng)};
    if (cross(b - a, c - a) < 0.0) std::swap(b, c);
    Triangle t = Triangle::from_vertices(a, b, c);
    if (t.area < 0.08 * t.diameter * t.diameter) continue;  // reject slivers
    const double scale = std::pow(10.0, -2.0 * unit(rng));
    const Vec2 offset{shift(rng), shift(rng)};
    return Triangle::from_vertices(offset + scale * (a - t.centroid),
                                   offset + scale * (b - t.centroid),
                                   offset + scale * (c - t.centroid));
  }
}

std::array<bool, 3> random_flips(Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  return {coin(rng), coin(rng), coin(rng)};
}

std::string format_max(double value) {
  std::ostringstream out;
  out << "max deviation " << value;
  return out.str();
}

CheckResult check_mesh_invariants() {
  CheckResult result{"mesh-invariants", true, ""};
  const Mesh meshes[] = {build_unit_square_mesh(4), build_lshape_initial(),
                         refine_uniform(build_lshape_initial())};
  for (const Mesh& m : meshes) {
    const MeshReport report = validate(m);
    if (!report.ok()) {
      result.pass = false;
      result.detail = report.violations.front();
      return result;
    }
  }
  result.detail = "unit square and L-shape meshes clean";
  return result;
}

CheckResult check_quadrature(Rng& rng) {
  CheckResult result{"quadrature-exactness", true, ""};
  // Reference-triangle monomials against the exact value a! b! / (a+b+2)!.
  const Triangle ref = Triangle::from_vertices({0, 0}, {1, 0}, {0, 1});
  std::uniform_int_distribution<int> pick_deg(0, 12);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = pick_deg(rng);
    std::uniform_int_distribution<int> pick_a(0, d);
    const int a = pick_a(rng);
    const int b = d - a;
    const QuadratureRule q = tri_quadrature(ref, d);
    double integral = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i)
      integral += q.weights[i] * std::pow(q.points[i].x, a) * std::pow(q.points[i].y, b);
    double exact = 1.0;
    for (int m = 1; m <= a; ++m) exact *= m;
    for (int m = 1; m <= b; ++m) exact *= m;
    for (int m = 1; m <= a + b + 2; ++m) exact /= m;
    worst = std::max(worst, std::abs(integral - exact));
  }
  result.pass = worst <= 1e-12;
  result.detail = format_max(worst);
  return result;
}

CheckResult check_projection_idempotence(Rng& rng) {
  CheckResult result{"projection-idempotence", true, ""};
  double worst = 0.0;
  const ScalarField f = [](Vec2 p) { return std::sin(3.0 * p.x) * std::cos(2.0 * p.y) + p.x; };
  for (int trial = 0; trial < 20; ++trial) {
    const Triangle tri = random_triangle(rng);
    for (int r = 0; r <= 3; ++r) {
      const TriBasis basis(tri, r);
      const Eigen::VectorXd once = project_tri(basis, f, 2 * r + 6);
      const Eigen::VectorXd twice = project_tri(
          basis, [&](Vec2 p) { return basis.value(once, p); }, 2 * r + 6);
      worst = std::max(worst, (once - twice).cwiseAbs().maxCoeff());
    }
    const EdgeGeometry eg = EdgeGeometry::from_endpoints(tri.v[0], tri.v[1]);
    for (int r = 0; r <= 3; ++r) {
      const EdgeBasis basis(eg, r);
      const Eigen::VectorXd once = project_edge(basis, f, 2 * r + 6);
      // Re-project the projected polynomial expressed as a field on the edge.
      const Eigen::VectorXd twice = project_edge(
          basis,
          [&](Vec2 p) {
            const Vec2 d = eg.b - eg.a;
            const double s = (2.0 * dot(p - eg.a, d) / dot(d, d)) - 1.0;
            return basis.value(once, s);
          },
          2 * r + 6);
      worst = std::max(worst, (once - twice).cwiseAbs().maxCoeff());
    }
  }
  result.pass = worst <= 1e-12;
  result.detail = format_max(worst);
  return result;
}

CheckResult check_commuting_identity(Rng& rng) {
  CheckResult result{"commuting-identity", true, ""};
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 2;
    const ElementContext ctx = make_element_context(random_triangle(rng), k, random_flips(rng));
    const LocalOperators ops = local_operators(ctx);

    Eigen::VectorXd u_coeffs(ctx.basis_k.size());
    for (int i = 0; i < u_coeffs.size(); ++i) u_coeffs[i] = coeff(rng);
    const ScalarField u = [&](Vec2 p) { return ctx.basis_k.value(u_coeffs, p); };
    const VectorField grad_u = [&](Vec2 p) { return ctx.basis_k.gradient(u_coeffs, p); };
    const ScalarField lap_u = [&](Vec2 p) { return ctx.basis_k.laplacian_value(u_coeffs, p); };

    const Eigen::VectorXd dw = ops.weak_laplacian_coeffs(project_Qh_local(ctx, u, grad_u));
    const Eigen::VectorXd projected =
        project_tri(ctx.basis_km2, lap_u, data_quad_degree(k));

    const QuadratureRule q = tri_quadrature(ctx.tri, form_quad_degree(k));
    const BasisValues bv = ctx.basis_km2.eval(q.points);
    double scale = 1.0, diff = 0.0;
    for (std::size_t p = 0; p < q.points.size(); ++p) {
      const double a = bv.val.row(p).dot(dw);
      const double b = bv.val.row(p).dot(projected);
      scale = std::max(scale, std::abs(b));
      diff = std::max(diff, std::abs(a - b));
    }
    worst = std::max(worst, diff / scale);
  }
  result.pass = worst <= 1e-11;
  result.detail = format_max(worst);
  return result;
}

CheckResult check_stabilizer(Rng& rng) {
  CheckResult result{"stabilizer-psd-kernel", true, ""};
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double worst_kernel = 0.0, worst_psd = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 2;
    const ElementContext ctx = make_element_context(random_triangle(rng), k, random_flips(rng));
    const Eigen::MatrixXd S = stabilizer_matrix(ctx);
    const double snorm = S.cwiseAbs().maxCoeff();

    // Vanishing on Q_h images of P_k polynomials.
    Eigen::VectorXd u_coeffs(ctx.basis_k.size());
    for (int i = 0; i < u_coeffs.size(); ++i) u_coeffs[i] = coeff(rng);
    const Eigen::VectorXd v = project_Qh_local(
        ctx, [&](Vec2 p) { return ctx.basis_k.value(u_coeffs, p); },
        [&](Vec2 p) { return ctx.basis_k.gradient(u_coeffs, p); });
    worst_kernel = std::max(worst_kernel, std::abs(v.dot(S * v)) / snorm);

    // Nonnegativity on random vectors.
    for (int probe = 0; probe < 25; ++probe) {
      Eigen::VectorXd r(S.rows());
      for (int i = 0; i < r.size(); ++i) r[i] = coeff(rng);
      worst_psd = std::min(worst_psd, r.dot(S * r) / snorm);
    }
  }
  result.pass = worst_kernel <= 1e-12 && worst_psd >= -1e-13;
  result.detail = "kernel residual " + std::to_string(worst_kernel) + ", min quadratic form " +
                  std::to_string(worst_psd);
  return result;
}

CheckResult check_sign_cancellation(const std::string& inject) {
  CheckResult result{"interior-edge-sign-cancellation", true, ""};
  Mesh mesh = build_unit_square_mesh(3);
  if (inject == "flipped-normal") {
    for (Edge& e : mesh.edges)
      if (!e.on_boundary) {
        e.normal = -1.0 * e.normal;  // stale tri_edge_sign: inconsistent mesh
        break;
      }
  }
  int bad_edges = 0;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edges[e].on_boundary) continue;
    // Recompute the outward-normal signs from geometry; stored signs must
    // agree and the two sides must cancel.
    int sum = 0;
    bool consistent = true;
    for (int a = 0; a < 2; ++a) {
      const int t = mesh.edges[e].tris[a];
      for (int le = 0; le < 3; ++le) {
        if (mesh.tri_edges[t][le] != e) continue;
        const auto& tv = mesh.triangles[t];
        const Vec2 dir = mesh.vertices[tv[(le + 1) % 3]] - mesh.vertices[tv[le]];
        const Vec2 outward = rotate_cw((1.0 / norm(dir)) * dir);
        const double s = dot(outward, mesh.edges[e].normal);
        if (mesh.tri_edge_sign[t][le] != (s > 0.0 ? 1 : -1)) consistent = false;
        sum += mesh.tri_edge_sign[t][le];
      }
    }
    if (sum != 0 || !consistent) ++bad_edges;
  }
  result.pass = bad_edges == 0;
  result.detail = std::to_string(bad_edges) + " interior edges without opposing normals";
  return result;
}

CheckResult check_patch_test() {
  CheckResult result{"quadratic-patch-test", true, ""};
  const Mesh mesh = build_unit_square_mesh(4);
  const int k = 2;
  const ScalarField u = [](Vec2 p) { return p.x * p.x + p.y * p.y; };
  const VectorField grad_u = [](Vec2 p) { return Vec2{2.0 * p.x, 2.0 * p.y}; };
  const ScalarField zero = [](Vec2) { return 0.0; };
  const BoundaryData bc{u, [&](Vec2 p, Vec2 n) { return dot(grad_u(p), n); }};

  const WGFunction reference = project_Qh(mesh, k, u, grad_u);
  const WGFunction full = solve_full(assemble_full(mesh, k, zero, bc));
  const WGFunction condensed = solve_condensed(mesh, condense(mesh, k, zero, bc));
  const double diff =
      std::max(max_dof_difference(full, reference), max_dof_difference(condensed, reference));
  result.pass = diff <= 1e-9;
  result.detail = format_max(diff);
  return result;
}

CheckResult check_schur_identity() {
  CheckResult result{"schur-complement-identity", true, ""};
  const Mesh mesh = build_unit_square_mesh(2);
  const int k = 2;
  const ManufacturedSolution exact = manufactured_solution("2");
  const GlobalSystem full = assemble_full(mesh, k, exact.f, exact.boundary());
  const CondensedSystem reduced = condense(mesh, k, exact.f, exact.boundary());

  const Eigen::MatrixXd K = Eigen::MatrixXd(full.A);
  const long ni = full.map.n_interior();
  const long ne = full.map.n_full_free - ni;
  const Eigen::MatrixXd Kii = K.topLeftCorner(ni, ni);
  const Eigen::MatrixXd Kie = K.topRightCorner(ni, ne);
  const Eigen::MatrixXd Kee = K.bottomRightCorner(ne, ne);
  const Eigen::MatrixXd schur = Kee - Kie.transpose() * Kii.llt().solve(Kie);
  const Eigen::VectorXd rhs_schur =
      full.rhs.tail(ne) - Kie.transpose() * Kii.llt().solve(full.rhs.head(ni));

  const double scale = schur.cwiseAbs().maxCoeff();
  const double diff_matrix = (schur - Eigen::MatrixXd(reduced.A)).cwiseAbs().maxCoeff();
  const double diff_rhs = (rhs_schur - reduced.rhs).cwiseAbs().maxCoeff();
  result.pass = diff_matrix <= 1e-10 * scale && diff_rhs <= 1e-10 * rhs_schur.norm();
  result.detail = "matrix deviation " + std::to_string(diff_matrix / scale) + " relative";
  return result;
}

CheckResult check_condensed_spd() {
  CheckResult result{"condensed-system-spd", true, ""};
  const Mesh mesh = build_unit_square_mesh(4);
  const ManufacturedSolution exact = manufactured_solution("2");
  const CondensedSystem reduced = condense(mesh, 2, exact.f, exact.boundary());
  const Eigen::MatrixXd dense = Eigen::MatrixXd(reduced.A);
  const double asym = (dense - dense.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
  const double min_eig = eig.eigenvalues().minCoeff();
  result.pass = min_eig > 0.0 && asym <= 1e-12 * dense.cwiseAbs().maxCoeff();
  result.detail = "min eigenvalue " + std::to_string(min_eig);
  return result;
}

CheckResult check_norm_identity(Rng& rng) {
  CheckResult result{"norm-bilinear-identity", true, ""};
  const Mesh mesh = build_unit_square_mesh(2);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 2; k <= 3; ++k) {
    const DofMap map = DofMap::build(mesh, k);
    WGFunction v = WGFunction::zero(map);
    for (long i = 0; i < v.data.size(); ++i) v.data[i] = coeff(rng);
    double a_form = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const LocalOperators ops = local_operators(make_element_context(mesh, t, k));
      const Eigen::VectorXd local = v.local_vector(mesh, t);
      a_form += local.dot(ops.A * local);
    }
    const double norm_sq = std::pow(triple_bar_norm(v, mesh), 2);
    worst = std::max(worst, std::abs(norm_sq - a_form) / a_form);
  }
  result.pass = worst <= 1e-10;
  result.detail = "relative deviation " + std::to_string(worst);
  return result;
}

CheckResult check_equivalence_small() {
  CheckResult result{"full-vs-condensed-equivalence", true, ""};
  const ManufacturedSolution exact = manufactured_solution("2");
  const double diff =
      check_equivalence(build_unit_square_mesh(4), 2, exact.f, exact.boundary());
  result.pass = diff <= 1e-8;
  result.detail = format_max(diff);
  return result;
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  Rng rng(options.seed);
  std::vector<CheckResult> results;
  results.push_back(check_mesh_invariants());
  results.push_back(check_quadrature(rng));
  results.push_back(check_projection_idempotence(rng));
  results.push_back(check_commuting_identity(rng));
  results.push_back(check_stabilizer(rng));
  results.push_back(check_sign_cancellation(options.inject));
  results.push_back(check_patch_test());
  results.push_back(check_schur_identity());
  results.push_back(check_condensed_spd());
  results.push_back(check_norm_identity(rng));
  results.push_back(check_equivalence_small());
  return results;
}

}  // namespace wg
