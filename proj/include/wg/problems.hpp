// Manufactured solutions and meshes for the convergence experiments.

#pragma once

#include <string>

#include "wg/mesh.hpp"
#include "wg/system.hpp"

namespace wg {

/// An exact solution with all derived data: the load f = lap(lap u) is
/// analytic, boundary data g, g_n follow from u and its gradient.
struct ManufacturedSolution {
  std::string id;
  std::string description;
  ScalarField u;
  VectorField grad;
  ScalarField laplacian;
  ScalarField f;
  bool zero_load = false;  // f is identically zero
  std::string regularity;

  BoundaryData boundary() const {
    return {u, [g = grad](Vec2 p, Vec2 n) { return dot(g(p), n); }};
  }
};

/// Known test cases:
///   "1"  clamped polynomial x^2(1-x)^2 y^2(1-y)^2 on the unit square
///        (homogeneous Dirichlet data for the fourth-order problem)
///   "1v" polynomial x^2(1-x)^2 y^2(1-y^2), same domain, inhomogeneous
///        normal-derivative data at y = 1
///   "2"  sin(pi x) sin(pi y) on the unit square
///   "3"  r^(5/3) sin(5 theta / 3) on the L-shaped domain, singular at the
///        reentrant corner, with zero load
ManufacturedSolution manufactured_solution(const std::string& id);

/// Mesh for a test case at refinement level >= 1. Square cases: n = 4*2^(level-1)
/// criss-cross mesh. L-shaped case: the initial 6-triangle mesh refined
/// (level-1) times.
Mesh example_mesh(const std::string& id, int level);

/// Representative mesh size for the level: 1/n on the square, and the
/// (halving) maximum element diameter on the L-shape.
double example_h(const std::string& id, int level);

}  // namespace wg
