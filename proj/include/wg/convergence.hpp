// Convergence-study driver: solve a test case on a sequence of uniformly
// refined meshes and tabulate errors with their observed orders.

#pragma once

#include <string>
#include <vector>

#include "wg/problems.hpp"
#include "wg/system.hpp"

namespace wg {

struct ConvergenceRow {
  int level = 0;
  double h = 0.0;
  double err_h2 = 0.0;
  double err_l2 = 0.0;
  double rate_h2 = 0.0;  // valid only when has_rates
  double rate_l2 = 0.0;
  bool has_rates = false;
};

struct ConvergenceTable {
  std::string example;
  int k = 0;
  std::vector<ConvergenceRow> rows;
  std::string failure;  // nonempty if a level failed; table truncated there
};

/// Observed order log2(e_coarse / e_fine) for a halved mesh size.
double rate(double e_coarse, double e_fine);

/// Solve levels 1..levels via the condensed path and compute both error
/// norms per level. On a solver failure the table is truncated and the
/// failure recorded.
ConvergenceTable run_convergence(const std::string& example, int k, int levels,
                                 const SolverOptions& options = {});

/// CSV with header level,h,err_H2,rate_H2,err_L2,rate_L2 (empty rate cells
/// on the first row).
std::string to_csv(const ConvergenceTable& table);

/// Aligned markdown table in the layout of the experiment tables.
std::string to_markdown(const ConvergenceTable& table);

}  // namespace wg
