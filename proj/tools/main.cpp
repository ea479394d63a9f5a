// Command-line front end: solve single cases, run convergence studies,
// inspect meshes, and run the self-validation suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wg/convergence.hpp"
#include "wg/norms.hpp"
#include "wg/validation.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct CommonOptions {
  std::string example = "2";
  int k = 2;
  std::string solver = "direct";
  double tolerance = 1e-10;
};

wg::SolverOptions solver_options(const CommonOptions& common) {
  wg::SolverOptions options;
  options.method = common.solver == "iterative" ? wg::SolverMethod::ConjugateGradient
                                                : wg::SolverMethod::Direct;
  options.tolerance = common.tolerance;
  return options;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
}

int level_for_square_n(int n) {
  int level = 1;
  while ((4 << (level - 1)) < n) ++level;
  if ((4 << (level - 1)) != n)
    throw CLI::ValidationError("--n", "n must be 4*2^i (got " + std::to_string(n) + ")");
  return level;
}

int run_solve(const CommonOptions& common, int n, int level, const std::string& method,
              const std::string& dump_path, const std::string& matrix_path) {
  const wg::ManufacturedSolution exact = wg::manufactured_solution(common.example);
  const bool lshape = common.example == "3";
  const int mesh_level = lshape ? level : level_for_square_n(n);
  const wg::Mesh mesh = wg::example_mesh(common.example, mesh_level);
  const wg::BoundaryData bc = exact.boundary();
  const wg::SolverOptions options = solver_options(common);

  std::printf("case %s (%s), k=%d, %d triangles, h=%.6g\n", exact.id.c_str(),
              exact.description.c_str(), common.k, mesh.n_triangles(),
              wg::example_h(common.example, mesh_level));

  wg::SolveReport report;
  wg::WGFunction u_h;
  if (method == "full") {
    const wg::GlobalSystem system = wg::assemble_full(mesh, common.k, exact.f, bc);
    if (!matrix_path.empty()) wg::write_matrix_market(system.A, matrix_path);
    u_h = wg::solve_full(system, options, &report);
  } else {
    const wg::CondensedSystem system = wg::condense(mesh, common.k, exact.f, bc);
    if (!matrix_path.empty()) wg::write_matrix_market(system.A, matrix_path);
    u_h = wg::solve_condensed(mesh, system, options, &report);
  }
  std::printf("solver: %s, n=%ld, nnz=%ld, iterations=%ld, residual=%.3e\n",
              report.method.c_str(), report.n, report.nnz, report.iterations, report.residual);

  const double err_h2 = wg::triple_bar_error(u_h, exact, mesh);
  const double err_l2 = wg::l2_error(u_h, exact, mesh);
  std::printf("err_H2 = %.8e\n", err_h2);
  std::printf("err_L2 = %.8e\n", err_l2);

  if (!dump_path.empty()) wg::write_solution(u_h, dump_path);
  return 0;
}

int run_convergence_cmd(const CommonOptions& common, int levels, const std::string& csv_path,
                        const std::string& markdown_path) {
  const wg::ConvergenceTable table =
      wg::run_convergence(common.example, common.k, levels, solver_options(common));
  std::cout << wg::to_markdown(table);
  if (!csv_path.empty()) write_text_file(csv_path, wg::to_csv(table));
  if (!markdown_path.empty()) write_text_file(markdown_path, wg::to_markdown(table));
  if (!table.failure.empty()) {
    std::cerr << "error: " << table.failure << "\n";
    return kExitNumerical;
  }
  return 0;
}

int run_validate(unsigned seed, const std::string& inject) {
  const std::vector<wg::CheckResult> results = wg::run_validation({seed, inject});
  bool all_pass = true;
  for (const wg::CheckResult& r : results) {
    std::printf("[%s] %-35s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : kExitNumerical;
}

int run_mesh(const std::string& type, int n, int refine, const std::string& out_path,
             bool info) {
  wg::Mesh mesh = type == "lshape" ? wg::build_lshape_initial() : wg::build_unit_square_mesh(n);
  for (int i = 0; i < refine; ++i) mesh = wg::refine_uniform(mesh);
  const wg::MeshReport report = wg::validate(mesh);
  if (info) {
    std::printf("vertices=%d edges=%d (boundary %d) triangles=%d\n", mesh.n_vertices(),
                mesh.n_edges(), mesh.n_boundary_edges(), mesh.n_triangles());
    std::printf("area=%.12g h_max=%.12g valid=%s\n", mesh.total_area(), mesh.max_diameter(),
                report.ok() ? "yes" : "no");
  }
  for (const std::string& v : report.violations) std::cerr << "violation: " << v << "\n";
  if (!out_path.empty()) wg::write_mesh(mesh, out_path);
  return report.ok() ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Galerkin solver for the clamped biharmonic problem"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOptions common;
  auto add_common = [&common](CLI::App* cmd) {
    cmd->add_option("--example", common.example, "test case: 1, 1v, 2, 3")
        ->check(CLI::IsMember({"1", "1v", "2", "3"}))
        ->capture_default_str();
    cmd->add_option("--k", common.k, "polynomial order (>= 2)")
        ->check(CLI::Range(2, 4))
        ->capture_default_str();
    cmd->add_option("--solver", common.solver, "linear solver")
        ->check(CLI::IsMember({"direct", "iterative"}))
        ->capture_default_str();
    cmd->add_option("--tol", common.tolerance, "iterative solver relative tolerance")
        ->check(CLI::Range(1e-16, 1e-4))
        ->capture_default_str();
  };

  // solve
  CLI::App* solve = app.add_subcommand("solve", "solve one case and report both error norms");
  int n = 8, level = 2;
  std::string method = "schur", dump_path, matrix_path;
  add_common(solve);
  solve->add_option("--n", n, "square mesh subdivisions (h = 1/n, n = 4*2^i)");
  solve->add_option("--level", level, "L-shape refinement level (case 3)")
      ->check(CLI::Range(1, 12));
  solve->add_option("--method", method, "assembly path")
      ->check(CLI::IsMember({"schur", "full"}))
      ->capture_default_str();
  solve->add_option("--dump-solution", dump_path, "write the DOF dump here");
  solve->add_option("--export-matrix", matrix_path, "write the system in Matrix Market format");

  // convergence
  CLI::App* conv = app.add_subcommand("convergence", "uniform refinement study");
  int levels = 4;
  std::string csv_path, markdown_path;
  add_common(conv);
  conv->add_option("--levels", levels, "number of refinement levels")->check(CLI::Range(1, 10));
  conv->add_option("--csv", csv_path, "write the table as CSV here");
  conv->add_option("--markdown", markdown_path, "write the markdown table here");

  // validate
  CLI::App* validate = app.add_subcommand("validate", "run the invariant suite");
  unsigned seed = 12345;
  std::string inject;
  validate->add_option("--seed", seed, "seed for sampled points/vectors")
      ->capture_default_str();
  validate->add_option("--inject", inject, "fault injection (testing the validator)")
      ->check(CLI::IsMember({"flipped-normal"}));

  // mesh
  CLI::App* mesh = app.add_subcommand("mesh", "build, inspect, export meshes");
  std::string mesh_type = "square", mesh_out;
  int mesh_n = 4, mesh_refine = 0;
  mesh->add_option("--type", mesh_type, "square or lshape")
      ->check(CLI::IsMember({"square", "lshape"}))
      ->capture_default_str();
  mesh->add_option("--n", mesh_n, "square subdivisions")->check(CLI::Range(1, 1024));
  mesh->add_option("--refine", mesh_refine, "uniform refinements")->check(CLI::Range(0, 10));
  mesh->add_option("--out", mesh_out, "write the mesh here");
  bool mesh_info = false;
  mesh->add_flag("--info", mesh_info, "print mesh statistics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(common, n, level, method, dump_path, matrix_path);
    if (conv->parsed()) return run_convergence_cmd(common, levels, csv_path, markdown_path);
    if (validate->parsed()) return run_validate(seed, inject);
    if (mesh->parsed()) return run_mesh(mesh_type, mesh_n, mesh_refine, mesh_out, mesh_info);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
