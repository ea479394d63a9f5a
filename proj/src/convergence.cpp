#include "wg/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "wg/norms.hpp"

namespace wg {

double rate(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0))
    throw std::invalid_argument("rate: errors must be positive");
  return std::log2(e_coarse / e_fine);
}

ConvergenceTable run_convergence(const std::string& example, int k, int levels,
                                 const SolverOptions& options) {
  if (levels < 1) throw std::invalid_argument("run_convergence: levels must be >= 1");
  const ManufacturedSolution exact = manufactured_solution(example);
  const BoundaryData bc = exact.boundary();

  ConvergenceTable table;
  table.example = example;
  table.k = k;
  for (int level = 1; level <= levels; ++level) {
    ConvergenceRow row;
    row.level = level;
    row.h = example_h(example, level);
    try {
      const Mesh mesh = example_mesh(example, level);
      const CondensedSystem system = condense(mesh, k, exact.f, bc);
      const WGFunction u_h = solve_condensed(mesh, system, options);
      row.err_h2 = triple_bar_error(u_h, exact, mesh);
      row.err_l2 = l2_error(u_h, exact, mesh);
    } catch (const NumericalError& err) {
      table.failure = "level " + std::to_string(level) + ": " + err.what();
      break;
    }
    if (!table.rows.empty()) {
      const ConvergenceRow& prev = table.rows.back();
      row.rate_h2 = rate(prev.err_h2, row.err_h2);
      row.rate_l2 = rate(prev.err_l2, row.err_l2);
      row.has_rates = true;
    }
    table.rows.push_back(row);
  }
  return table;
}

namespace {

std::string fmt(const char* format, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

}  // namespace

std::string to_csv(const ConvergenceTable& table) {
  std::ostringstream out;
  out << "level,h,err_H2,rate_H2,err_L2,rate_L2\n";
  for (const ConvergenceRow& r : table.rows) {
    out << r.level << "," << fmt("%.12g", r.h) << "," << fmt("%.10e", r.err_h2) << ",";
    if (r.has_rates) out << fmt("%.6f", r.rate_h2);
    out << "," << fmt("%.10e", r.err_l2) << ",";
    if (r.has_rates) out << fmt("%.6f", r.rate_l2);
    out << "\n";
  }
  return out.str();
}

std::string to_markdown(const ConvergenceTable& table) {
  std::ostringstream out;
  const bool by_level = table.example == "3";
  out << "| " << (by_level ? "Level" : "h    ")
      << " | ||| u_h - Q_h u ||| | order  | || u_0 - Q_0 u || | order  |\n";
  out << "|-------|--------------------|--------|-------------------|--------|\n";
  char mesh_label[32];
  for (const ConvergenceRow& r : table.rows) {
    if (by_level)
      std::snprintf(mesh_label, sizeof(mesh_label), "%-5d", r.level);
    else
      std::snprintf(mesh_label, sizeof(mesh_label), "1/%-3d", static_cast<int>(1.0 / r.h + 0.5));
    out << "| " << mesh_label << " | " << fmt("%.4e", r.err_h2) << "         | "
        << (r.has_rates ? fmt("%.4f", r.rate_h2) : "      ") << " | " << fmt("%.4e", r.err_l2)
        << "        | " << (r.has_rates ? fmt("%.4f", r.rate_l2) : "      ") << " |\n";
  }
  if (!table.failure.empty()) out << "\ntruncated: " << table.failure << "\n";
  return out.str();
}

}  // namespace wg
